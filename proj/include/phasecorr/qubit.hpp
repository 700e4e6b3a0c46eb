#pragma once

// Two-qubit view of states supported on span{|g>, |-g>} per mode, in the
// orthonormal cat basis {|e>, |o>}; computational order ee, eo, oe, oo with
// |e> = |0> (sigma_z = +1). Correlation measures act on this 4x4 matrix.

#include <Eigen/Dense>

#include "phasecorr/coherent.hpp"

namespace phasecorr {

/// Validated 4x4 density matrix plus the amplitude that generated its basis.
class QubitDensityMatrix {
 public:
  /// Checks Hermiticity (1e-12), trace (1e-10) and PSD (-1e-10); the stored
  /// matrix is the Hermitian part of the input.
  QubitDensityMatrix(const Eigen::Matrix4cd& matrix, Complex gamma);

  const Eigen::Matrix4cd& matrix() const { return matrix_; }
  Complex gamma() const { return gamma_; }

 private:
  Eigen::Matrix4cd matrix_;
  Complex gamma_;
};

/// Project a two-mode operator onto the cat basis of gamma.
/// Throws SupportLeakageError when the trace lost exceeds 1e-10.
QubitDensityMatrix qubit_matrix(const DyadOperator& rho, Complex gamma);

/// Expand a cat-basis matrix back into coherent dyads.
DyadOperator qubit_to_dyads(const Eigen::Matrix4cd& matrix, Complex gamma);

struct BlochDecomposition {
  Eigen::Vector3d a;  // Bloch vector of side A
  Eigen::Vector3d b;  // Bloch vector of side B
  Eigen::Matrix3d t;  // t(i, j) = Tr(rho sigma_i (x) sigma_j)
};

BlochDecomposition bloch(const QubitDensityMatrix& rho);

/// S(A) + S(B) - S(AB).
double mutual_information(const QubitDensityMatrix& rho, LogBase base = LogBase::Two);

struct SphereSearch {
  int seeds = 2048;
  double x_tol = 1e-9;
};

struct ClassicalCorrelation {
  double value = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // projective measurement on A, sign fixed so z >= 0
};

/// Largest S(B) - sum_k p_k S(B | k) over projective measurements on A.
ClassicalCorrelation classical_correlation(const QubitDensityMatrix& rho, LogBase base = LogBase::Two,
                                           const SphereSearch& search = {});

/// Mutual information minus classical correlation.
double quantum_discord(const QubitDensityMatrix& rho, LogBase base = LogBase::Two,
                       const SphereSearch& search = {});

/// Local quantum uncertainty on A: 1 - largest eigenvalue of
/// W_ij = Tr(sqrt(rho) (sigma_i (x) I) sqrt(rho) (sigma_j (x) I)).
double lqu(const QubitDensityMatrix& rho);

/// (|a|^2 + |T|_F^2 - largest eigenvalue of (a a^T + T T^T)) / 4.
double geometric_discord(const QubitDensityMatrix& rho);

inline constexpr double kRankTolerance = 1e-9;

/// Operator Schmidt rank: singular values of R_mn = Tr(rho sigma_m (x) sigma_n),
/// m, n in {0..3}, above tol times the largest.
int correlation_rank(const QubitDensityMatrix& rho, double tol = kRankTolerance);

double t_det(const QubitDensityMatrix& rho);

/// Pauli matrices with index 0 the identity.
const Eigen::Matrix2cd& pauli(int index);

}  // namespace phasecorr
