#pragma once

// Photon-statistics and quadrature-squeezing witnesses.

#include "phasecorr/coherent.hpp"

namespace phasecorr {

/// Combined mode a(alpha) = conj(alpha1) a1 + conj(alpha2) a2 with
/// alpha1 = cos(theta), alpha2 = exp(i phi) sin(theta).
struct SU2ModeParams {
  double theta = 0.0;  // [0, pi/2]
  double phi = 0.0;    // [0, 2 pi)
};

/// (<a^dag^2 a^2> - <a^dag a>^2) / <a^dag a> on one mode.
/// Throws NumericalError when <a^dag a> <= 1e-14.
double mandel_q_mode(const DyadOperator& rho, int mode);

/// Q of the combined mode a(alpha) for a two-mode operator.
double mandel_q_su2_at(const DyadOperator& rho, const SU2ModeParams& params);

struct SU2Search {
  int theta_points = 64;  // inclusive of 0 and pi/2
  int phi_points = 64;    // [0, 2 pi), endpoint excluded
  double x_tol = 1e-7;
};

struct MandelMinimum {
  double q = 0.0;
  SU2ModeParams argmin;
};

/// Grid search followed by simplex refinement. Grid points whose combined
/// mode is empty are skipped; ties keep the smallest theta.
MandelMinimum mandel_q_su2(const DyadOperator& rho, const SU2Search& search = {});

/// D_j = 4 Var(X_j) - 1 for X1 = (q1 + q2)/2 and X2 = (p1 + p2)/2.
/// Negative values witness squeezing.
struct Squeezing {
  double d1 = 0.0;
  double d2 = 0.0;
};

Squeezing squeezing_d(const DyadOperator& rho);

}  // namespace phasecorr
