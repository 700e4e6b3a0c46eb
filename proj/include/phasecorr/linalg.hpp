#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "phasecorr/types.hpp"

namespace phasecorr {

/// Eigenvalues of a Hermitian (or real symmetric) matrix, sorted descending.
template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.eval(), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = solver.eigenvalues().reverse();
  return ev;
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero (round-off) are clamped.
template <typename Derived>
auto psd_sqrt(const Eigen::MatrixBase<Derived>& m) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime,
                               Derived::ColsAtCompileTime>;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.eval());
  auto vals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().eval();
  Matrix r = solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
  return r;
}

inline double log_in(double x, LogBase base) {
  return base == LogBase::Two ? std::log2(x) : std::log(x);
}

/// -sum p log p with 0 log 0 = 0.
template <typename Range>
double shannon_entropy(const Range& probs, LogBase base) {
  double s = 0.0;
  for (double p : probs) {
    if (p > 0.0) s -= p * log_in(p, base);
  }
  return s;
}

inline double shannon_entropy(std::initializer_list<double> probs, LogBase base) {
  return shannon_entropy(std::vector<double>(probs), base);
}

/// von Neumann entropy of a small density matrix.
template <typename Derived>
double matrix_entropy(const Eigen::MatrixBase<Derived>& rho, LogBase base) {
  Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  return shannon_entropy(std::vector<double>(ev.data(), ev.data() + ev.size()), base);
}

}  // namespace phasecorr
