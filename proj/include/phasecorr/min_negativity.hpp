#pragma once

// Wigner negativity minimized over local unitaries acting inside the cat
// subspace span{|e>, |o>} of each mode (identity on the complement). The
// true minimum over all local unitaries can only be lower.

#include <array>

#include <Eigen/Dense>

#include "phasecorr/phase_space.hpp"

namespace phasecorr {

/// Z-Y-Z Euler angles (phi, theta, psi) per side: U = Rz(phi) Ry(theta) Rz(psi).
struct LocalUnitaryParams {
  std::array<double, 3> a{};
  std::array<double, 3> b{};

  double norm() const;
};

Eigen::Matrix2cd zyz_unitary(const std::array<double, 3>& angles);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dag expanded back into coherent dyads.
/// Throws SupportLeakageError when rho leaves the cat subspace.
DyadOperator apply_local_unitaries(const DyadOperator& rho, Complex gamma, const LocalUnitaryParams& params);

struct MinNegativitySearch {
  int points = 5;                               // grid points per Euler angle
  int coarse_nodes = 48;                        // quadrature nodes while scanning the grid
  int seeds = 3;                                // best grid points refined by simplex
  int refine_nodes = 96;                        // quadrature nodes during refinement
  int max_refine_evals = 400;                   // per seed
  double x_tol = 1e-3;                          // simplex diameter, radians
  double classical_tolerance = 1e-6 * 2.0 / 3.14159265358979323846;
  int probe_points = 61;                        // marginal Wigner probe grid per axis
};

struct MinNegativityResult {
  double value = 0.0;             // smallest feasible negativity volume found
  LocalUnitaryParams argmin;
  bool feasible = false;          // false: nothing passed the constraint, value is the raw volume
  NegativityResult quadrature;    // convergence record of the reported value
  int evaluations = 0;
};

/// True when both marginals have Wigner >= -tolerance on the probe grid of
/// half-width |gamma| + 4.
bool marginals_classical(const DyadOperator& rho, Complex gamma, double tolerance, int probe_points);

/// Grid scan, simplex refinement of the best seeds, then a final evaluation
/// of each candidate (and the identity) with the full quadrature policy.
MinNegativityResult min_negativity(const DyadOperator& rho, Complex gamma, const MinNegativitySearch& search = {},
                                   const QuadratureSpec& quad = {});

}  // namespace phasecorr
