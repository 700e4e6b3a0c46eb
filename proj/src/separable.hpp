#pragma once

// Internal helpers shared by the phase-space evaluators.

#include <numbers>
#include <utility>
#include <vector>

#include "phasecorr/coherent.hpp"

namespace phasecorr::detail {

inline constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

using LabelPair = std::pair<Complex, Complex>;  // (ket, bra)

// Distinct label pairs per mode and the coefficients coupling them, so that
// W(z1, z2) = sum_pq coeff(p, q) K_p(z1) K_q(z2). For one mode, `outer` is
// empty and coeff has a single row.
struct SeparableForm {
  std::vector<LabelPair> outer;
  std::vector<LabelPair> inner;
  Eigen::MatrixXcd coeff;
};

SeparableForm separate(const DyadOperator& rho);

struct Rule {
  std::vector<double> x, w;
};

Rule gauss_legendre(int n, double lo, double hi);

}  // namespace phasecorr::detail
