#include "phasecorr/nonclassicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "phasecorr/gaussian.hpp"
#include "phasecorr/optimize.hpp"

namespace phasecorr {

namespace {

constexpr double kEmptyMode = 1e-14;

// Normal-ordered moments of both modes, enough to expand any a(alpha).
struct MomentTable {
  Complex number[2][2];              // <a_j^dag a_k>
  Complex pair[2][2][2][2];          // <a_j^dag a_k^dag a_l a_m>

  explicit MomentTable(const DyadOperator& rho) {
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        int cre[2] = {0, 0}, ann[2] = {0, 0};
        ++cre[j];
        ++ann[k];
        number[j][k] = normal_moment(rho, cre[0], ann[0], cre[1], ann[1]);
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < 2; ++m) {
            int c2[2] = {0, 0}, a2[2] = {0, 0};
            ++c2[j];
            ++c2[k];
            ++a2[l];
            ++a2[m];
            pair[j][k][l][m] = normal_moment(rho, c2[0], a2[0], c2[1], a2[1]);
          }
      }
  }

  // Q for a(alpha); NaN when the mode is empty.
  double q(const std::array<Complex, 2>& alpha) const {
    // a(alpha)^dag = alpha1 a1^dag + alpha2 a2^dag
    Complex n = 0.0, n2 = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        n += alpha[j] * std::conj(alpha[k]) * number[j][k];
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < 2; ++m)
            n2 += alpha[j] * alpha[k] * std::conj(alpha[l]) * std::conj(alpha[m]) * pair[j][k][l][m];
      }
    if (n.real() <= kEmptyMode) return std::numeric_limits<double>::quiet_NaN();
    return (n2.real() - n.real() * n.real()) / n.real();
  }
};

std::array<Complex, 2> su2_weights(double theta, double phi) {
  return {Complex(std::cos(theta), 0.0), std::polar(std::sin(theta), phi)};
}

// Fold arbitrary angles back to theta in [0, pi/2], phi in [0, 2 pi) by
// removing the global phase of the weight vector.
SU2ModeParams canonical(double theta, double phi) {
  const auto w = su2_weights(theta, phi);
  SU2ModeParams p;
  p.theta = std::atan2(std::abs(w[1]), std::abs(w[0]));
  if (std::abs(w[1]) == 0.0 || std::abs(w[0]) == 0.0) return p;  // relative phase is meaningless
  double rel = std::arg(w[1]) - std::arg(w[0]);
  const double two_pi = 2.0 * std::numbers::pi;
  rel = std::fmod(rel, two_pi);
  if (rel < 0.0) rel += two_pi;
  p.phi = rel;
  return p;
}

}  // namespace

double mandel_q_mode(const DyadOperator& rho, int mode) {
  if (mode < 0 || mode >= rho.modes()) throw InvalidArgument("mode index out of range");
  const int c1 = mode == 0 ? 1 : 0, c2 = mode == 1 ? 1 : 0;
  const double n = normal_moment(rho, c1, c1, c2, c2).real();
  if (n <= kEmptyMode) throw NumericalError("Mandel Q undefined: vanishing mean photon number");
  const double n2 = normal_moment(rho, 2 * c1, 2 * c1, 2 * c2, 2 * c2).real();
  return (n2 - n * n) / n;
}

double mandel_q_su2_at(const DyadOperator& rho, const SU2ModeParams& params) {
  if (rho.modes() != 2) throw InvalidArgument("SU(2) Mandel Q requires a two-mode state");
  const double q = MomentTable(rho).q(su2_weights(params.theta, params.phi));
  if (std::isnan(q)) throw NumericalError("Mandel Q undefined: vanishing mean photon number");
  return q;
}

MandelMinimum mandel_q_su2(const DyadOperator& rho, const SU2Search& search) {
  if (rho.modes() != 2) throw InvalidArgument("SU(2) Mandel Q requires a two-mode state");
  if (search.theta_points < 2 || search.phi_points < 1) throw InvalidArgument("SU(2) grid too small");
  const MomentTable table(rho);
  const double half_pi = 0.5 * std::numbers::pi;

  MandelMinimum best{std::numeric_limits<double>::infinity(), {}};
  for (int i = 0; i < search.theta_points; ++i) {
    const double theta = half_pi * i / (search.theta_points - 1);
    for (int j = 0; j < search.phi_points; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / search.phi_points;
      const double q = table.q(su2_weights(theta, phi));
      // ties within round-off keep the earlier (smaller theta) point
      if (std::isnan(q)) continue;
      if (!std::isfinite(best.q) || q < best.q - 1e-12 * std::max(1.0, std::abs(best.q))) best = {q, {theta, phi}};
    }
  }
  if (!std::isfinite(best.q)) throw NumericalError("Mandel Q undefined for every probed mode");

  auto objective = [&](const Eigen::VectorXd& x) {
    const double q = table.q(su2_weights(x(0), x(1)));
    return std::isnan(q) ? std::numeric_limits<double>::max() : q;
  };
  SimplexOptions opt;
  opt.initial_step = half_pi / (search.theta_points - 1);
  opt.x_tol = search.x_tol;
  opt.f_tol = 0.0;
  const auto refined = nelder_mead<double>(objective, Eigen::Vector2d(best.argmin.theta, best.argmin.phi), opt);
  if (refined.value < best.q) best = {refined.value, canonical(refined.x(0), refined.x(1))};
  return best;
}

Squeezing squeezing_d(const DyadOperator& rho) {
  const Eigen::Matrix4d s = covariance(rho).sigma;
  return {s(0, 0) + s(2, 2) + 2.0 * s(0, 2) - 1.0, s(1, 1) + s(3, 3) + 2.0 * s(1, 3) - 1.0};
}

}  // namespace phasecorr
