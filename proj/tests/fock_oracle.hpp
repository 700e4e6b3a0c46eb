#pragma once

// Truncated number-basis reference implementation. Shares nothing with the
// coherent-dyad code paths: states are explicit Fock vectors, spectra come
// from an SVD of the weighted vector stack, displacements from a matrix
// exponential, and the cat basis is normalized numerically.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "phasecorr/catalog.hpp"

namespace fock {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Truncation used throughout the tests: max(40, ceil((|gamma| + 4)^2)) photons.
inline int photon_cutoff(double gamma) {
  return std::max(40, static_cast<int>(std::ceil((gamma + 4.0) * (gamma + 4.0))));
}

inline Vector coherent(Complex alpha, int dim) {
  Vector v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

inline Matrix annihilation(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// D(beta) on `dim` levels, taken as the leading block of an exponential
/// computed on a doubled space so the truncation edge stays far away.
inline Matrix displacement(Complex beta, int dim) {
  const int big = 2 * dim + 20;
  const Matrix a = annihilation(big);
  const Matrix generator = beta * a.adjoint() - std::conj(beta) * a;
  const Matrix full = generator.exp();
  return full.topLeftCorner(dim, dim);
}

struct CatBasis {
  Vector even;
  Vector odd;
};

/// Numerically normalized (|g> +- |-g>); at gamma = 0 the limit |0>, |1>.
inline CatBasis cats(Complex gamma, int dim) {
  if (std::abs(gamma) == 0.0) {
    CatBasis b{Vector::Zero(dim), Vector::Zero(dim)};
    b.even(0) = 1.0;
    b.odd(1) = 1.0;
    return b;
  }
  const Vector plus = coherent(gamma, dim), minus = coherent(-gamma, dim);
  return {(plus + minus).normalized(), (plus - minus).normalized()};
}

/// sum_k p_k |psi_k><psi_k|; two-mode kets are stored as dim x dim
/// coefficient matrices (row = mode A photon number), one-mode kets as dim x 1.
struct Mixture {
  int modes = 2;
  int dim = 0;
  std::vector<std::pair<double, Matrix>> parts;
};

inline Matrix product(const Vector& a, const Vector& b) { return a * b.transpose(); }

inline Mixture build(phasecorr::StateId id, Complex gamma, int dim) {
  using phasecorr::StateId;
  const Vector g = coherent(gamma, dim), mg = coherent(-gamma, dim);
  const CatBasis c = cats(gamma, dim);
  Mixture m{2, dim, {}};
  auto add = [&](double w, const Matrix& psi) { m.parts.emplace_back(w, psi / psi.norm()); };
  switch (id) {
    case StateId::rho_pp:
      add(0.25, product(g, g)), add(0.25, product(mg, mg)), add(0.25, product(c.even, c.even)),
          add(0.25, product(c.odd, c.odd));
      break;
    case StateId::rho_pm:
      add(0.25, product(g, mg)), add(0.25, product(mg, g)), add(0.25, product(c.even, c.odd)),
          add(0.25, product(c.odd, c.even));
      break;
    case StateId::sigma_q_pp: add(0.5, product(g, g)), add(0.5, product(mg, mg)); break;
    case StateId::sigma_q_pm: add(0.5, product(g, mg)), add(0.5, product(mg, g)); break;
    case StateId::sigma_c_pp: add(0.5, product(c.even, c.even)), add(0.5, product(c.odd, c.odd)); break;
    case StateId::sigma_c_pm: add(0.5, product(c.even, c.odd)), add(0.5, product(c.odd, c.even)); break;
    case StateId::coherent_product: add(1.0, product(g, g)); break;
    case StateId::marginal:
      m.modes = 1;
      for (const Vector* v : {&g, &mg, &c.even, &c.odd}) add(0.25, *v);
      break;
    case StateId::even_cat: m.modes = 1, add(1.0, c.even); break;
    case StateId::odd_cat: m.modes = 1, add(1.0, c.odd); break;
  }
  return m;
}

/// Columns sqrt(p_k) psi_k, so rho = S S^dag.
inline Matrix stack(const Mixture& m) {
  const int rows = m.modes == 2 ? m.dim * m.dim : m.dim;
  Matrix s(rows, static_cast<int>(m.parts.size()));
  for (std::size_t k = 0; k < m.parts.size(); ++k)
    s.col(static_cast<int>(k)) = std::sqrt(m.parts[k].first) * m.parts[k].second.reshaped();
  return s;
}

/// Nonzero spectrum (descending) from the singular values of the stack.
inline std::vector<double> spectrum(const Mixture& m) {
  Eigen::JacobiSVD<Matrix> svd(stack(m));
  std::vector<double> ev;
  for (int i = 0; i < svd.singularValues().size(); ++i) ev.push_back(std::norm(svd.singularValues()(i)));
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

inline double purity(const Mixture& m) {
  const Matrix s = stack(m);
  return (s.adjoint() * s).squaredNorm();
}

/// Tr(rho a1^dag^m1 a1^n1 a2^dag^m2 a2^n2).
inline Complex moment(const Mixture& m, int m1, int n1, int m2 = 0, int n2 = 0) {
  const Matrix a = annihilation(m.dim);
  auto lower = [&](Matrix psi, int first, int second) {
    for (int i = 0; i < first; ++i) psi = a * psi;
    for (int i = 0; i < second; ++i) psi = psi * a.transpose();
    return psi;
  };
  Complex s = 0.0;
  for (const auto& [w, psi] : m.parts) {
    const Matrix left = lower(psi, m1, m2), right = lower(psi, n1, n2);
    s += w * left.conjugate().cwiseProduct(right).sum();  // <a^m psi | a^n psi>
  }
  return s;
}

/// Wigner function as a displaced-parity expectation, normalized so that it
/// integrates to one over d Re(z) d Im(z) per mode.
inline double wigner(const Mixture& m, Complex z1, Complex z2 = 0.0) {
  const Matrix d1 = displacement(-z1, m.dim);
  const Matrix d2 = m.modes == 2 ? displacement(-z2, m.dim) : Matrix::Identity(1, 1);
  Eigen::VectorXd parity1(m.dim);
  for (int n = 0; n < m.dim; ++n) parity1(n) = n % 2 ? -1.0 : 1.0;
  const Eigen::VectorXd parity2 = m.modes == 2 ? parity1 : Eigen::VectorXd::Ones(1);
  const Eigen::MatrixXd signs = parity1 * parity2.transpose();
  double s = 0.0;
  for (const auto& [w, psi] : m.parts) {
    const Matrix moved = d1 * psi * d2.transpose();
    s += w * signs.cwiseProduct(moved.cwiseAbs2()).sum();
  }
  const double norm = 2.0 / std::numbers::pi;
  return m.modes == 2 ? norm * norm * s : norm * s;
}

inline double husimi(const Mixture& m, Complex z1, Complex z2 = 0.0) {
  const Vector c1 = coherent(z1, m.dim);
  const Vector c2 = m.modes == 2 ? coherent(z2, m.dim) : Vector::Ones(1);
  double s = 0.0;
  for (const auto& [w, psi] : m.parts) s += w * std::norm(c1.dot(psi * c2.conjugate()));
  return s / std::pow(std::numbers::pi, m.modes);
}

/// Two-qubit matrix in the numerically normalized cat basis, order ee, eo, oe, oo.
inline Eigen::Matrix4cd qubit_matrix(const Mixture& m, Complex gamma) {
  const CatBasis c = cats(gamma, m.dim);
  const Vector* basis[2] = {&c.even, &c.odd};
  Eigen::Matrix4cd q = Eigen::Matrix4cd::Zero();
  for (const auto& [w, psi] : m.parts) {
    Eigen::Vector4cd amp;
    for (int i = 0; i < 4; ++i) amp(i) = basis[i / 2]->dot(psi * basis[i % 2]->conjugate());
    q += w * amp * amp.adjoint();
  }
  return q;
}

}  // namespace fock
