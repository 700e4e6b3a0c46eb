#pragma once

// Second moments and the Gaussian reference state of a two-mode operator.
// Quadratures q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); the
// vacuum has covariance I/2.

#include <Eigen/Dense>

#include "phasecorr/coherent.hpp"

namespace phasecorr {

/// Covariance in the ordering (q1, p1, q2, p2) plus the mean vector.
struct CovarianceMatrix {
  Eigen::Matrix4d sigma;
  Eigen::Vector4d mean;
};

/// Requires a two-mode operator.
CovarianceMatrix covariance(const DyadOperator& rho);

struct SymplecticPair {
  double plus;
  double minus;
};

/// Closed form from the local invariants det A, det B, det C, det sigma.
/// Throws NumericalError for a matrix that violates the uncertainty relation.
SymplecticPair symplectic_eigenvalues(const Eigen::Matrix4d& sigma);

/// (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), zero at x = 1/2.
double gaussian_mode_entropy(double d);

/// S(Gaussian reference) - S(rho); nats unless base is Two.
double non_gaussianity(const DyadOperator& rho, LogBase base = LogBase::E);

}  // namespace phasecorr
