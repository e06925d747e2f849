#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kkflow/errors.hpp"

namespace kkflow {

/// The scalar nonlinearity phi of u_t + (u phi(|u|))_x = 0.
///
/// The flux Jacobian has eigenvalue phi(r) + r phi'(r) along u and phi(r)
/// with multiplicity n-1 on the orthogonal complement, r = |u|. Both are
/// non-negative under the model assumptions, so every wave travels to the
/// right and the schemes use the left neighbour only.
///
/// `r_max` bounds every evaluation made through the checked interface
/// (flux, max_wave_speed). Steppers evaluate `phi` directly.
struct PhiModel {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  std::function<double(double)> ddphi;
  double r_max = 1.0;
  /// Set for the built-in power law phi(r) = r^p.
  std::optional<double> power;

  static PhiModel power_law(double p, double r_max) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw DomainError("power law exponent must be >= 1");
    }
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
      throw DomainError("r_max must be positive and finite");
    }
    PhiModel m;
    m.phi = [p](double r) { return std::pow(r, p); };
    m.dphi = [p](double r) { return p * std::pow(r, p - 1.0); };
    m.ddphi = [p](double r) {
      if (p == 1.0) return 0.0;
      if (p == 2.0) return 2.0;
      return p * (p - 1.0) * std::pow(r, p - 2.0);
    };
    m.r_max = r_max;
    m.power = p;
    return m;
  }

  /// A user-supplied phi. Derivatives must be consistent with phi.
  static PhiModel custom(std::function<double(double)> phi, std::function<double(double)> dphi,
                         std::function<double(double)> ddphi, double r_max) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
      throw DomainError("r_max must be positive and finite");
    }
    return PhiModel{std::move(phi), std::move(dphi), std::move(ddphi), r_max, std::nullopt};
  }

  bool is_power(double p) const { return power && *power == p; }

  double operator()(double r) const { return phi(r); }
};

/// One sampled violation of the model assumptions.
struct Violation {
  std::string assumption;  // "A1" or "A2"
  std::string condition;
  double r;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Passing means passing at the sampled resolution, not a proof.
  bool passed() const { return violations.empty(); }
};

/// Samples r uniformly on [0, r_max] and checks
///   A1: phi(0) = 0, phi(r) > 0 for r > 0, phi'(r) >= 0;
///   A2: phi, phi', phi'' finite.
/// A non-finite phi throws EvaluationError instead of being reported, since
/// nothing downstream can proceed from it.
inline ValidationReport validate_phi(const PhiModel& model, std::size_t samples) {
  if (samples < 2) throw DomainError("validate_phi needs at least 2 samples");
  ValidationReport report;
  for (std::size_t k = 0; k < samples; ++k) {
    const double r = model.r_max * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double p = model.phi(r);
    if (!std::isfinite(p)) {
      std::ostringstream msg;
      msg << "phi(" << r << ") is not finite";
      throw EvaluationError(msg.str(), r);
    }
    const double dp = model.dphi(r);
    const double ddp = model.ddphi(r);
    if (k == 0) {
      if (p != 0.0) report.violations.push_back({"A1", "phi(0) = 0", r});
    } else if (!(p > 0.0)) {
      report.violations.push_back({"A1", "phi(r) > 0", r});
    }
    if (!std::isfinite(dp)) {
      report.violations.push_back({"A2", "phi'(r) finite", r});
    } else if (dp < 0.0) {
      report.violations.push_back({"A1", "phi'(r) >= 0", r});
    }
    if (!std::isfinite(ddp)) report.violations.push_back({"A2", "phi''(r) finite", r});
  }
  return report;
}

namespace detail {
inline void check_radius(const PhiModel& model, double r, const char* what) {
  if (!(r >= 0.0) || r > model.r_max) {
    std::ostringstream msg;
    msg << what << ": r = " << r << " outside [0, " << model.r_max << "]";
    throw DomainError(msg.str());
  }
}
}  // namespace detail

/// f(r) = r phi(r), the flux of the scalar law satisfied by r = |u|.
inline double flux(const PhiModel& model, double r) {
  detail::check_radius(model, r, "flux");
  return r * model.phi(r);
}

/// Upper bound on f'(r) = phi(r) + r phi'(r) over [0, r_bound].
///
/// Exact for the power law, (1 + p) r_bound^p. Otherwise the supremum over
/// 2048 uniform samples, inflated by 5%.
inline double max_wave_speed(const PhiModel& model, double r_bound) {
  if (!(r_bound > 0.0)) throw DomainError("max_wave_speed: r_bound must be positive");
  detail::check_radius(model, r_bound, "max_wave_speed");
  if (model.power) {
    const double p = *model.power;
    return (1.0 + p) * std::pow(r_bound, p);
  }
  constexpr std::size_t kSamples = 2048;
  double sup = 0.0;
  for (std::size_t k = 0; k <= kSamples; ++k) {
    const double r = r_bound * static_cast<double>(k) / kSamples;
    sup = std::max(sup, model.phi(r) + r * model.dphi(r));
  }
  return 1.05 * sup;
}

/// sup of phi' over [0, r_bound]; exact for the power law, sampled + 5% otherwise.
inline double max_dphi(const PhiModel& model, double r_bound) {
  detail::check_radius(model, r_bound, "max_dphi");
  if (model.power) return model.dphi(r_bound);
  constexpr std::size_t kSamples = 2048;
  double sup = 0.0;
  for (std::size_t k = 0; k <= kSamples; ++k) {
    sup = std::max(sup, model.dphi(r_bound * static_cast<double>(k) / kSamples));
  }
  return 1.05 * sup;
}

/// Entropy/entropy-flux pairs for the scalar law r_t + f(r)_x = 0.
enum class EntropyKind {
  KruzkovAbs,  ///< (|r - k|, sgn(r - k)(f(r) - f(k)))
  SquareFlux,  ///< (f(r) - f(k), integral_k^r f'(s)^2 ds)
};

struct EntropyPairConfig {
  double k = 0.0;
  EntropyKind kind = EntropyKind::KruzkovAbs;
};

namespace detail {
inline double unchecked_flux(const PhiModel& m, double r) { return r * m.phi(r); }

inline double square_flux_integral(const PhiModel& m, double a, double b) {
  if (m.power) {
    const double p = *m.power;
    const double c = (p + 1.0) * (p + 1.0) / (2.0 * p + 1.0);
    const double e = 2.0 * p + 1.0;
    const auto pw = [e](double s) { return std::copysign(std::pow(std::abs(s), e), s); };
    return c * (pw(b) - pw(a));
  }
  // composite Simpson
  constexpr int kPanels = 2048;
  const double h = (b - a) / kPanels;
  const auto g = [&](double s) {
    const double fp = m.phi(s) + s * m.dphi(s);
    return fp * fp;
  };
  double sum = g(a) + g(b);
  for (int i = 1; i < kPanels; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return sum * h / 3.0;
}
}  // namespace detail

inline double entropy(const PhiModel& m, const EntropyPairConfig& pair, double r) {
  switch (pair.kind) {
    case EntropyKind::KruzkovAbs:
      return std::abs(r - pair.k);
    case EntropyKind::SquareFlux:
      return detail::unchecked_flux(m, r) - detail::unchecked_flux(m, pair.k);
  }
  return 0.0;
}

inline double entropy_flux(const PhiModel& m, const EntropyPairConfig& pair, double r) {
  switch (pair.kind) {
    case EntropyKind::KruzkovAbs: {
      const double s = r > pair.k ? 1.0 : (r < pair.k ? -1.0 : 0.0);
      return s * (detail::unchecked_flux(m, r) - detail::unchecked_flux(m, pair.k));
    }
    case EntropyKind::SquareFlux:
      return detail::square_flux_integral(m, pair.k, r);
  }
  return 0.0;
}

}  // namespace kkflow
