#include <doctest.h>

#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "fock_oracle.hpp"
#include "phasecorr/catalog.hpp"
#include "phasecorr/linalg.hpp"
#include "phasecorr/qubit.hpp"

using namespace phasecorr;

namespace {

struct Coefficients {
  double w1, w2, w3, v1, v2, v3;  // first triple: (++), second: (+-)
};

Coefficients coefficients(double big) {
  return {((1 + big) * (1 + big) + 2) / 8, (1 - big * big) / 8, ((1 - big) * (1 - big) + 2) / 8,
          (1 + big) * (1 + big) / 8,       (3 - big * big) / 8, (1 - big) * (1 - big) / 8};
}

double h_bits(std::initializer_list<double> p) { return shannon_entropy(p, LogBase::Two); }

QubitDensityMatrix embedded(StateId id, double g) { return qubit_matrix(build(id, g), g); }

Eigen::Matrix2cd random_unitary(std::mt19937& rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = Complex(n(rng), n(rng));
  return Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
}

}  // namespace

TEST_SUITE("qubit_embed") {
  TEST_CASE("matrices of the two mixtures") {
    const double big = std::exp(-2.0);
    const Coefficients c = coefficients(big);
    Eigen::Matrix4d pp;
    pp << c.w1, 0, 0, c.w2, 0, c.w2, c.w2, 0, 0, c.w2, c.w2, 0, c.w2, 0, 0, c.w3;
    Eigen::Matrix4d pm;
    pm << c.v1, 0, 0, -c.w2, 0, c.v2, -c.w2, 0, 0, -c.w2, c.v2, 0, -c.w2, 0, 0, c.v3;
    CHECK((embedded(StateId::rho_pp, 1.0).matrix() - pp.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((embedded(StateId::rho_pm, 1.0).matrix() - pm.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-12);
    for (double g : {0.05, 1.0, 3.0}) {
      // Small gamma loses a few digits to the 1/(1 - Gamma) normalization.
      const Eigen::Matrix4cd m = embedded(StateId::sigma_c_pp, g).matrix();
      CHECK((m - Eigen::Vector4cd(0.5, 0, 0, 0.5).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("embedding agrees with the Fock oracle") {
    for (double g : {0.5, 1.0, 2.0})
      for (StateId id : {StateId::rho_pp, StateId::rho_pm, StateId::sigma_q_pp, StateId::sigma_q_pm,
                         StateId::sigma_c_pp, StateId::sigma_c_pm}) {
        const auto oracle = fock::qubit_matrix(fock::build(id, g, fock::photon_cutoff(g) + 1), g);
        CHECK((embedded(id, g).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-8);
      }
  }

  TEST_CASE("Fock-limit embedding agrees with the oracle at gamma = 0") {
    for (StateId id : {StateId::rho_pp, StateId::rho_pm, StateId::sigma_q_pp, StateId::sigma_c_pm}) {
      const auto oracle = fock::qubit_matrix(fock::build(id, 0.0, 41), 0.0);
      CHECK((fock_limit_qubit_matrix(id).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("support leakage and validation") {
    CHECK_THROWS_AS(qubit_matrix(build(StateId::coherent_product, 0.5), 1.0), SupportLeakageError);
    CHECK_THROWS_AS(qubit_matrix(build(StateId::marginal, 1.0), 1.0), InvalidArgument);
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity() / 4.0;
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(QubitDensityMatrix(bad, 1.0), InvalidArgument);
    CHECK_THROWS_AS(QubitDensityMatrix(Eigen::Matrix4cd::Identity(), 1.0), InvalidArgument);
    Eigen::Matrix4cd negative = Eigen::Vector4cd(1.2, -0.2, 0, 0).asDiagonal();
    CHECK_THROWS_AS(QubitDensityMatrix(negative, 1.0), InvalidArgument);
  }

  TEST_CASE("round trip through the dyad expansion") {
    const QubitDensityMatrix pm = embedded(StateId::rho_pm, 0.8);
    const DyadOperator back = qubit_to_dyads(pm.matrix(), 0.8);
    CHECK(approx_equal(back, build(StateId::rho_pm, 0.8), 1e-12));
    CHECK((qubit_matrix(back, 0.8).matrix() - pm.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("mutual information and classical correlation") {
    const Eigen::Matrix4cd product = Eigen::Vector4cd(1, 0, 0, 0).asDiagonal();
    CHECK(std::abs(mutual_information(QubitDensityMatrix(product, 1.0))) < 1e-12);
    for (StateId id : {StateId::sigma_c_pp, StateId::sigma_c_pm}) {
      CHECK(std::abs(mutual_information(embedded(id, 1.0)) - 1.0) < 1e-10);
      CHECK(std::abs(classical_correlation(embedded(id, 1.0)).value - 1.0) < 1e-10);
    }

    const double big = std::exp(-2.0), b2 = big * big;
    const double local = h_bits({0.5 + big / 4, 0.5 - big / 4});
    const double s_pp = h_bits({0.25, (2 + b2) / 4, (1 - b2) / 4});
    CHECK(std::abs(mutual_information(embedded(StateId::rho_pp, 1.0)) - (2 * local - s_pp)) < 1e-10);

    const Coefficients c = coefficients(big);
    const ClassicalCorrelation jpp = classical_correlation(embedded(StateId::rho_pp, 1.0));
    CHECK((jpp.axis - Eigen::Vector3d::UnitZ()).norm() < 1e-3);
    const ClassicalCorrelation jpm = classical_correlation(embedded(StateId::rho_pm, 1.0));
    CHECK((jpm.axis - Eigen::Vector3d::UnitZ()).norm() < 1e-3);
    CHECK(std::abs(jpm.value - (2 * local - h_bits({c.v1, c.v2, c.v3, c.v2}))) < 1e-8);

    // The sphere search against an independent brute-force maximization.
    for (StateId id : {StateId::rho_pp, StateId::sigma_q_pp})
      for (double g : {0.4, 1.0}) {
        const QubitDensityMatrix q = embedded(id, g);
        CHECK(std::abs(classical_correlation(q).value - brute::classical_correlation(q.matrix())) < 1e-7);
      }
    CHECK(std::abs(mutual_information(embedded(StateId::rho_pp, 1.0), LogBase::E) -
                   std::log(2.0) * mutual_information(embedded(StateId::rho_pp, 1.0))) < 1e-12);
  }

  TEST_CASE("quantum discord") {
    const double big = std::exp(-2.0), b2 = big * big;
    const Coefficients c = coefficients(big);
    const double s_pp = h_bits({0.25, (2 + b2) / 4, (1 - b2) / 4});
    CHECK(std::abs(quantum_discord(embedded(StateId::rho_pp, 1.0)) - (h_bits({c.w1, c.w2, c.w3, c.w2}) - s_pp)) < 1e-6);
    for (StateId id : {StateId::rho_pp, StateId::rho_pm}) {
      const QubitDensityMatrix limit = fock_limit_qubit_matrix(id);
      CHECK(std::abs(quantum_discord(limit)) < 1e-8);
    }
    for (StateId id : kAllStates) {
      if (mode_count(id) != 2) continue;
      const QubitDensityMatrix q = embedded(id, 0.9);
      const double parts = classical_correlation(q).value + quantum_discord(q);
      CHECK(std::abs(parts - mutual_information(q)) < 1e-12);
    }
  }

  TEST_CASE("local quantum uncertainty") {
    const double big = std::exp(-2.0), b2 = big * big;
    const double pp = (1 - b2) / (2 * (1 + b2) * (1 + b2)) * (2 - (1 - b2) * std::sqrt(2 + b2));
    const double pm = 1 / (1 + b2) - std::sqrt(2 - b2) / 2;
    CHECK(std::abs(lqu(embedded(StateId::rho_pp, 1.0)) - pp) < 1e-8);
    CHECK(std::abs(lqu(embedded(StateId::rho_pm, 1.0)) - pm) < 1e-8);
    CHECK(std::abs(lqu(embedded(StateId::coherent_product, 1.0))) < 1e-10);
  }

  TEST_CASE("geometric discord") {
    const double big = std::exp(-2.0), b2 = big * big;
    for (StateId id : {StateId::rho_pp, StateId::rho_pm})
      CHECK(std::abs(geometric_discord(embedded(id, 1.0)) - std::pow((1 - b2) / 4, 2)) < 1e-10);
    CHECK(std::abs(geometric_discord(embedded(StateId::coherent_product, 1.0))) < 1e-14);
    for (StateId id : {StateId::rho_pp, StateId::sigma_q_pp, StateId::sigma_q_pm})
      for (double g : {0.5, 1.0}) {
        const QubitDensityMatrix q = embedded(id, g);
        CHECK(std::abs(geometric_discord(q) - brute::geometric_discord(q.matrix())) < 1e-6);
      }
  }

  TEST_CASE("correlation rank and T determinant") {
    CHECK(correlation_rank(embedded(StateId::rho_pp, 1.0)) == 3);
    CHECK(correlation_rank(embedded(StateId::rho_pm, 1.0)) == 3);
    CHECK(correlation_rank(fock_limit_qubit_matrix(StateId::rho_pp)) == 2);
    CHECK(correlation_rank(fock_limit_qubit_matrix(StateId::rho_pm)) == 2);
    CHECK(correlation_rank(embedded(StateId::sigma_q_pp, 1.0)) == 2);
    CHECK(correlation_rank(embedded(StateId::sigma_c_pm, 1.0)) == 2);
    CHECK(correlation_rank(embedded(StateId::coherent_product, 1.0)) == 1);
    CHECK(std::abs(t_det(embedded(StateId::rho_pp, 1.0))) < 1e-12);
    CHECK(std::abs(t_det(embedded(StateId::rho_pm, 1.0))) < 1e-12);

    // (|00> + |11>)/sqrt(2): T = diag(1, -1, 1).
    Eigen::Vector4cd bell(1, 0, 0, 1);
    bell /= std::sqrt(2.0);
    const QubitDensityMatrix phi(bell * bell.adjoint(), 1.0);
    CHECK(std::abs(t_det(phi) + 1.0) < 1e-12);
    const BlochDecomposition b = bloch(phi);
    CHECK((b.t - Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(b.a.norm() < 1e-12);
  }

  TEST_CASE("measures are invariant under local unitaries") {
    std::mt19937 rng(20240917);
    const QubitDensityMatrix base = embedded(StateId::rho_pm, 0.7);
    const double disc = quantum_discord(base), j = classical_correlation(base).value, i = mutual_information(base);
    const double u = lqu(base), dg = geometric_discord(base);
    const int rank = correlation_rank(base);
    for (int sample = 0; sample < 20; ++sample) {
      const Eigen::Matrix4cd local = Eigen::kroneckerProduct(random_unitary(rng), random_unitary(rng)).eval();
      const QubitDensityMatrix moved(local * base.matrix() * local.adjoint(), base.gamma());
      CHECK(std::abs(quantum_discord(moved) - disc) < 1e-8);
      CHECK(std::abs(classical_correlation(moved).value - j) < 1e-8);
      CHECK(std::abs(mutual_information(moved) - i) < 1e-8);
      CHECK(std::abs(lqu(moved) - u) < 1e-8);
      CHECK(std::abs(geometric_discord(moved) - dg) < 1e-8);
      CHECK(correlation_rank(moved) == rank);
    }
  }

  TEST_CASE("orderings and limits") {
    for (double g : {0.3, 0.5, 0.8}) {
      const QubitDensityMatrix pp = embedded(StateId::rho_pp, g), pm = embedded(StateId::rho_pm, g);
      CHECK(quantum_discord(pm) < quantum_discord(pp));
      CHECK(lqu(pm) < lqu(pp));
    }
    const double far = 3.1;  // Gamma < 1e-8
    REQUIRE(std::exp(-2 * far * far) < 1e-8);
    const QubitDensityMatrix pp = embedded(StateId::rho_pp, far), pm = embedded(StateId::rho_pm, far);
    CHECK(std::abs(quantum_discord(pp) - quantum_discord(pm)) < 1e-6);
    CHECK(std::abs(lqu(pp) - lqu(pm)) < 1e-6);
  }
}
