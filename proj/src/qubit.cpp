#include "phasecorr/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "phasecorr/optimize.hpp"

namespace phasecorr {

namespace {

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

double expectation(const Eigen::Matrix4cd& rho, const Eigen::Matrix4cd& op) {
  return (rho * op).trace().real();
}

double bloch_entropy(const Eigen::Vector3d& r, LogBase base) {
  const double len = std::min(r.norm(), 1.0);
  return shannon_entropy({0.5 * (1.0 + len), 0.5 * (1.0 - len)}, base);
}

Eigen::Matrix2cd reduced(const Eigen::Matrix4cd& m, int keep) {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        r(i, j) += keep == 0 ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
  return r;
}

Eigen::Vector3d spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Eigen::Vector3d fix_sign(Eigen::Vector3d n) {
  for (int i = 2; i >= 0; --i) {
    if (std::abs(n(i)) > 1e-12) return n(i) < 0 ? Eigen::Vector3d(-n) : n;
  }
  return n;
}

}  // namespace

const Eigen::Matrix2cd& pauli(int index) {
  static const std::array<Eigen::Matrix2cd, 4> matrices = [] {
    const Complex i(0.0, 1.0);
    std::array<Eigen::Matrix2cd, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, -i, i, 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return matrices.at(static_cast<std::size_t>(index));
}

QubitDensityMatrix::QubitDensityMatrix(const Eigen::Matrix4cd& matrix, Complex gamma) : gamma_(gamma) {
  if (!matrix.allFinite()) throw InvalidArgument("qubit matrix has non-finite entries");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("qubit matrix is not Hermitian");
  matrix_ = 0.5 * (matrix + matrix.adjoint());
  if (std::abs(matrix_.trace().real() - 1.0) > 1e-10) throw InvalidArgument("qubit matrix trace differs from 1");
  if (hermitian_eigenvalues(matrix_).minCoeff() < -1e-10)
    throw InvalidArgument("qubit matrix is not positive semidefinite");
}

QubitDensityMatrix qubit_matrix(const DyadOperator& rho, Complex gamma) {
  if (rho.modes() != 2) throw InvalidArgument("qubit embedding requires a two-mode operator");
  const CatPair cats = cat_kets(gamma);
  const std::array<const ModeKet*, 2> basis{&cats.even, &cats.odd};
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  double scale = 1.0;  // magnitude of the largest single contribution, for round-off tolerances
  for (const auto& t : rho.terms()) {
    // <c|ket> per mode and basis vector, and <c|bra> likewise
    Complex ket[2][2], bra[2][2];
    for (int mode = 0; mode < 2; ++mode)
      for (int c = 0; c < 2; ++c) {
        ket[mode][c] = inner(*basis[c], t.ket[mode]);
        bra[mode][c] = inner(*basis[c], t.bra[mode]);
      }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const Complex v = t.coeff * ket[0][r >> 1] * ket[1][r & 1] * std::conj(bra[0][c >> 1] * bra[1][c & 1]);
        m(r, c) += v;
        scale = std::max(scale, std::abs(v));
      }
  }
  const double loss = rho.trace().real() - m.trace().real();
  if (std::abs(loss) > 1e-10 * scale)
    throw SupportLeakageError("operator has weight outside the cat subspace (trace loss " + std::to_string(loss) + ")");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NumericalError("projected operator is not Hermitian");
  // Cancellation between large odd-cat weights leaves round-off of order
  // scale * eps; the Hermitian part with unit trace is the faithful matrix.
  Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
  h /= h.trace().real();
  return QubitDensityMatrix(h, gamma);
}

DyadOperator qubit_to_dyads(const Eigen::Matrix4cd& matrix, Complex gamma) {
  const CatPair cats = cat_kets(gamma);
  const std::array<const ModeKet*, 2> basis{&cats.even, &cats.odd};
  std::vector<DyadTerm> terms;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (matrix(r, c) == Complex(0.0)) continue;
      for (const auto& ka : basis[r >> 1]->terms)
        for (const auto& kb : basis[r & 1]->terms)
          for (const auto& ba : basis[c >> 1]->terms)
            for (const auto& bb : basis[c & 1]->terms)
              terms.push_back({matrix(r, c) * ka.coeff * kb.coeff * std::conj(ba.coeff * bb.coeff),
                               {ka.label, kb.label},
                               {ba.label, bb.label}});
    }
  return DyadOperator(2, std::move(terms));
}

BlochDecomposition bloch(const QubitDensityMatrix& rho) {
  BlochDecomposition d;
  const Eigen::Matrix4cd& m = rho.matrix();
  for (int i = 0; i < 3; ++i) {
    d.a(i) = expectation(m, kron(pauli(i + 1), pauli(0)));
    d.b(i) = expectation(m, kron(pauli(0), pauli(i + 1)));
    for (int j = 0; j < 3; ++j) d.t(i, j) = expectation(m, kron(pauli(i + 1), pauli(j + 1)));
  }
  return d;
}

double mutual_information(const QubitDensityMatrix& rho, LogBase base) {
  const Eigen::Matrix4cd& m = rho.matrix();
  return matrix_entropy(reduced(m, 0), base) + matrix_entropy(reduced(m, 1), base) - matrix_entropy(m, base);
}

ClassicalCorrelation classical_correlation(const QubitDensityMatrix& rho, LogBase base, const SphereSearch& search) {
  const BlochDecomposition d = bloch(rho);
  const double s_b = bloch_entropy(d.b, base);
  // S(B) minus the average conditional entropy after measuring A along n
  auto gain = [&](const Eigen::Vector3d& n) {
    double conditional = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double p = 0.5 * (1.0 + sign * n.dot(d.a));
      if (p <= 1e-15) continue;
      const Eigen::Vector3d r = (d.b + sign * d.t.transpose() * n) / (2.0 * p);
      conditional += p * bloch_entropy(r, base);
    }
    return s_b - conditional;
  };

  ClassicalCorrelation best{-std::numeric_limits<double>::infinity(), Eigen::Vector3d::UnitZ()};
  for (const auto& n : fibonacci_sphere(search.seeds)) {
    const double v = gain(n);
    if (v > best.value) best = {v, n};
  }
  const double theta = std::acos(std::clamp(best.axis.z(), -1.0, 1.0));
  const double phi = std::atan2(best.axis.y(), best.axis.x());
  SimplexOptions opt;
  opt.initial_step = 2.0 * std::sqrt(std::numbers::pi / search.seeds);
  opt.x_tol = search.x_tol;
  opt.f_tol = 0.0;
  const auto refined = nelder_mead<double>(
      [&](const Eigen::VectorXd& x) { return -gain(spherical(x(0), x(1))); }, Eigen::Vector2d(theta, phi), opt);
  if (-refined.value > best.value) best = {-refined.value, spherical(refined.x(0), refined.x(1))};
  best.axis = fix_sign(best.axis.normalized());
  return best;
}

double quantum_discord(const QubitDensityMatrix& rho, LogBase base, const SphereSearch& search) {
  return mutual_information(rho, base) - classical_correlation(rho, base, search).value;
}

double lqu(const QubitDensityMatrix& rho) {
  const Eigen::Matrix4cd root = psd_sqrt(rho.matrix());
  std::array<Eigen::Matrix4cd, 3> local;
  for (int i = 0; i < 3; ++i) local[i] = kron(pauli(i + 1), pauli(0));
  Eigen::Matrix3d w;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) w(i, j) = w(j, i) = (root * local[i] * root * local[j]).trace().real();
  return 1.0 - hermitian_eigenvalues(w)(0);
}

double geometric_discord(const QubitDensityMatrix& rho) {
  const BlochDecomposition d = bloch(rho);
  const Eigen::Matrix3d k = d.a * d.a.transpose() + d.t * d.t.transpose();
  return 0.25 * (d.a.squaredNorm() + d.t.squaredNorm() - hermitian_eigenvalues(k)(0));
}

int correlation_rank(const QubitDensityMatrix& rho, double tol) {
  Eigen::Matrix4d r;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) r(m, n) = expectation(rho.matrix(), kron(pauli(m), pauli(n)));
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4d>(r).singularValues();
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

double t_det(const QubitDensityMatrix& rho) { return bloch(rho).t.determinant(); }

}  // namespace phasecorr
