#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"
#include "kkflow/harness.hpp"
#include "kkflow/run.hpp"

// CSV output. Values carry 17 significant digits so every double
// round-trips; every file starts with a header row.

namespace kkflow {

namespace detail {
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing", path);
  return out;
}

inline void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'", path);
}
}  // namespace detail

/// Shortest decimal form of t that reads back exactly: 0, 0.25, 0.75, ...
inline std::string time_label(double t) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, t);
  return std::string(buf, res.ptr);
}

/// Header `x,u1,...,un,r` then one row per cell.
inline void write_snapshot_csv(const Grid1D& grid, const Snapshot& snap, const std::string& path) {
  std::ofstream out = detail::open_for_write(path);
  out << "x";
  for (std::size_t i = 0; i < snap.u.n(); ++i) out << ",u" << (i + 1);
  out << ",r\n";
  for (std::size_t j = 0; j < snap.u.cells(); ++j) {
    out << detail::fmt17(grid.center(j));
    for (std::size_t i = 0; i < snap.u.n(); ++i) out << ',' << detail::fmt17(snap.u(i, j));
    out << ',' << detail::fmt17(snap.r[j]) << '\n';
  }
  detail::finish(out, path);
}

/// One file per snapshot, `<prefix>_t<time>.csv`. Returns the paths written.
inline std::vector<std::string> write_csv(const Grid1D& grid, const Trajectory& traj, const std::string& prefix) {
  std::vector<std::string> paths;
  for (const auto& snap : traj.snapshots) {
    paths.push_back(prefix + "_t" + time_label(snap.t) + ".csv");
    write_snapshot_csv(grid, snap, paths.back());
  }
  return paths;
}

/// Header `N,dx,E,rate`; an absent rate (and the E of a failed level) is an
/// empty field.
inline void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out = detail::open_for_write(path);
  out << "N,dx,E,rate\n";
  for (const auto& row : report.rows) {
    out << row.level << ',' << detail::fmt17(row.dx) << ',';
    if (!row.failure) out << detail::fmt17(row.error);
    out << ',';
    if (row.rate) out << detail::fmt17(*row.rate);
    out << '\n';
  }
  detail::finish(out, path);
}

}  // namespace kkflow
