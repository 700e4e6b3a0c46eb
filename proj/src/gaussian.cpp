#include "phasecorr/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace phasecorr {

namespace {

// Tr(rho a^dag_j... a_k...) with creation counts `cre` and annihilation counts
// `ann` per mode; normal order makes the operator a product over modes.
Complex moment(const DyadOperator& rho, std::array<int, 2> cre, std::array<int, 2> ann) {
  return normal_moment(rho, cre[0], ann[0], cre[1], ann[1]);
}

}  // namespace

CovarianceMatrix covariance(const DyadOperator& rho) {
  if (rho.modes() != 2) throw InvalidArgument("covariance requires a two-mode state");
  const double r = 1.0 / std::numbers::sqrt2;
  // R_j = c_j a + conj(c_j) a^dag
  const std::array<Complex, 4> c{Complex(r, 0), Complex(0, -r), Complex(r, 0), Complex(0, -r)};
  auto mode = [](int j) { return j / 2; };

  std::array<Complex, 2> a{};
  for (int m = 0; m < 2; ++m) {
    std::array<int, 2> ann{0, 0};
    ann[m] = 1;
    a[m] = moment(rho, {0, 0}, ann);
  }

  CovarianceMatrix out;
  for (int j = 0; j < 4; ++j) out.mean(j) = 2.0 * (c[j] * a[mode(j)]).real();

  for (int j = 0; j < 4; ++j)
    for (int k = j; k < 4; ++k) {
      const int mj = mode(j), mk = mode(k);
      std::array<int, 2> two{0, 0};
      two[mj] += 1;
      two[mk] += 1;
      std::array<int, 2> cre{0, 0}, ann{0, 0};
      cre[mj] += 1;
      ann[mk] += 1;
      const Complex aa = moment(rho, {0, 0}, two);       // <a_j a_k>
      const Complex dd = moment(rho, two, {0, 0});       // <a_j^dag a_k^dag>
      const Complex jk = moment(rho, cre, ann);          // <a_j^dag a_k>
      const Complex kj = std::conj(jk);                  // <a_k^dag a_j>
      const double comm = mj == mk ? 1.0 : 0.0;          // [a_j, a_k^dag]
      const Complex rr = c[j] * c[k] * aa + c[j] * std::conj(c[k]) * (kj + comm) +
                         std::conj(c[j]) * c[k] * jk + std::conj(c[j]) * std::conj(c[k]) * dd;
      out.sigma(j, k) = out.sigma(k, j) = rr.real() - out.mean(j) * out.mean(k);
    }
  return out;
}

SymplecticPair symplectic_eigenvalues(const Eigen::Matrix4d& sigma) {
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw NumericalError("covariance matrix is not symmetric");
  const double detA = sigma.topLeftCorner<2, 2>().determinant();
  const double detB = sigma.bottomRightCorner<2, 2>().determinant();
  const double detC = sigma.topRightCorner<2, 2>().determinant();
  const double det = sigma.determinant();
  const double delta = detA + detB + 2.0 * detC;
  double disc = delta * delta - 4.0 * det;
  if (disc < -1e-9) throw NumericalError("invalid covariance matrix: negative discriminant");
  disc = std::max(disc, 0.0);
  const double plus2 = 0.5 * (delta + std::sqrt(disc));
  const double minus2 = 0.5 * (delta - std::sqrt(disc));
  if (minus2 < 0.0) throw NumericalError("invalid covariance matrix: negative symplectic invariant");
  SymplecticPair d{std::sqrt(plus2), std::sqrt(minus2)};
  if (d.minus < 0.5 - 1e-9) throw NumericalError("covariance violates the uncertainty relation");
  return d;
}

double gaussian_mode_entropy(double d) {
  const double up = d + 0.5, down = d - 0.5;
  if (down <= 0.0) return up * std::log(up);
  return up * std::log(up) - down * std::log(down);
}

double non_gaussianity(const DyadOperator& rho, LogBase base) {
  const SymplecticPair d = symplectic_eigenvalues(covariance(rho).sigma);
  const double reference = gaussian_mode_entropy(d.plus) + gaussian_mode_entropy(d.minus);
  const double value = reference - von_neumann_entropy(spectrum(rho), LogBase::E);
  return base == LogBase::E ? value : value / std::numbers::ln2;
}

}  // namespace phasecorr
