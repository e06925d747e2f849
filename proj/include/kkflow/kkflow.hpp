#pragma once

// Upwind schemes for the symmetric Keyfitz-Kranzer system
//   u_t + (u phi(|u|))_x = 0,  u in R^n,
// exact solutions for phi(r) = r^2, and the verification harness.

#include "kkflow/cone.hpp"
#include "kkflow/csv.hpp"
#include "kkflow/errors.hpp"
#include "kkflow/field.hpp"
#include "kkflow/harness.hpp"
#include "kkflow/phi_model.hpp"
#include "kkflow/riemann.hpp"
#include "kkflow/run.hpp"
#include "kkflow/schemes.hpp"
