#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fock_oracle.hpp"
#include "phasecorr/catalog.hpp"
#include "phasecorr/phase_space.hpp"

using namespace phasecorr;

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

const StateId kTwoMode[] = {StateId::rho_pp,     StateId::rho_pm,     StateId::sigma_q_pp,      StateId::sigma_q_pm,
                            StateId::sigma_c_pp, StateId::sigma_c_pm, StateId::coherent_product};

// Fock-basis Wigner value of the bare dyad |ket><bra|.
Complex oracle_dyad(Complex ket, Complex bra, Complex z) {
  const int dim = 60;
  const fock::Matrix shift = fock::displacement(-z, dim);
  const fock::Vector k = shift * fock::coherent(ket, dim), b = shift * fock::coherent(bra, dim);
  Complex s = 0.0;
  for (int n = 0; n < dim; ++n) s += (n % 2 ? -1.0 : 1.0) * k(n) * std::conj(b(n));
  return kTwoOverPi * s;
}

}  // namespace

TEST_SUITE("phase_space") {
  TEST_CASE("dyad kernel") {
    for (double g : {0.3, 1.0, 2.2}) CHECK(std::abs(wigner_dyad_kernel(g, g, g) - kTwoOverPi) < 1e-14);
    CHECK(std::abs(wigner_dyad_kernel(0.0, 0.0, 0.0) - kTwoOverPi) < 1e-15);
    const Complex z(0.0, 0.3);
    CHECK(std::abs(wigner_dyad_kernel(1.0, -1.0, z) - oracle_dyad(1.0, -1.0, z)) < 1e-8);
    const Complex a(0.4, -0.9), b(-0.2, 0.5), w(0.7, 0.1);
    CHECK(std::abs(wigner_dyad_kernel(a, b, w) - oracle_dyad(a, b, w)) < 1e-8);
    // Diagonal dyads reduce to the displaced-vacuum Gaussian.
    CHECK(std::abs(wigner_dyad_kernel(a, a, w) - kTwoOverPi * std::exp(-2.0 * std::norm(w - a))) < 1e-14);
  }

  TEST_CASE("pointwise values") {
    for (double g : {0.2, 1.0, 3.0}) CHECK(std::abs(wigner(build(StateId::odd_cat, g), 0.0) + kTwoOverPi) < 1e-12);
    const DyadOperator local_q = partial_trace(build(StateId::sigma_q_pp, 1.0), 0);
    CHECK(std::abs(wigner(local_q, 0.0) - kTwoOverPi * std::exp(-2.0)) < 1e-14);
    // Local form with the cosh factor.
    const Complex z(0.3, -0.4);
    const double expected = kTwoOverPi * std::exp(-2.0 * (std::norm(z) + 1.0)) * std::cosh(4.0 * z.real());
    CHECK(std::abs(wigner(local_q, z) - expected) < 1e-14);
    CHECK(wigner_grid_minimum(build(StateId::marginal, 2.0), 6.0, 201) >= -1e-12);
  }

  TEST_CASE("Wigner and Husimi agree with the Fock oracle") {
    const double g = 1.0;
    const auto oracle = fock::build(StateId::rho_pp, g, fock::photon_cutoff(g) + 1);
    const DyadOperator pp = build(StateId::rho_pp, g);
    const Complex z1(0.4, 0.2), z2(-0.8, 0.5);
    CHECK(std::abs(wigner(pp, z1, z2) - fock::wigner(oracle, z1, z2)) < 1e-8);
    CHECK(std::abs(husimi(pp, g, g) - fock::husimi(oracle, g, g)) < 1e-9);
    CHECK(husimi(pp, g, g) > 0.0);
    CHECK(std::abs(husimi(build(StateId::coherent_product, 0.0), 0.0, 0.0) - 1.0 / (std::numbers::pi * std::numbers::pi)) <
          1e-15);
    const DyadOperator vacuum(1, {{1.0, {0.0, 0.0}, {0.0, 0.0}}});
    CHECK(std::abs(husimi(vacuum, 0.0) - 1.0 / std::numbers::pi) < 1e-15);
  }

  TEST_CASE("Husimi is nonnegative on a 41^4 probe grid") {
    for (StateId id : kTwoMode) CHECK(husimi_grid_minimum(build(id, 1.0), 5.0, 41) >= -1e-12);
  }

  TEST_CASE("argument validation") {
    const DyadOperator pp = build(StateId::rho_pp, 1.0);
    const std::array<Complex, 1> one{0.0};
    CHECK_THROWS_AS(wigner(pp, one), InvalidArgument);
    CHECK_THROWS_AS(wigner(pp, Complex(NAN, 0.0), 0.0), InvalidArgument);
    const DyadOperator skew(1, {{Complex(0, 1), {1.0, 0.0}, {-1.0, 0.0}}});
    CHECK_THROWS_AS(wigner(skew, 0.3), NumericalError);
    CHECK_THROWS_AS(wigner_grid_minimum(pp, 0.0, 11), InvalidArgument);
  }

  TEST_CASE("marginalizing the two-mode Wigner function gives the reduced state") {
    const DyadOperator pm = build(StateId::rho_pm, 0.9);
    const DyadOperator reduced = partial_trace(pm, 0);
    const double h = 0.05, half = 7.0;
    const int steps = static_cast<int>(2 * half / h);
    for (Complex z1 : {Complex(0.0, 0.0), Complex(0.5, -0.3), Complex(-1.1, 0.2)}) {
      double sum = 0.0;
      for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j) sum += wigner(pm, z1, Complex(-half + i * h, -half + j * h));
      CHECK(std::abs(sum * h * h - wigner(reduced, z1)) < 1e-5);
    }
  }

  TEST_CASE("normalization of the quadrature") {
    for (StateId id : kTwoMode) {
      const VolumeEstimate v = wigner_integrals(build(id, 1.0), 96, 4.0);
      CHECK(std::abs(v.signed_ - 1.0) < 1e-4);
      CHECK(v.absolute >= v.signed_ - 1e-12);
    }
  }

  TEST_CASE("negativity volume") {
    const NegativityResult coh = negativity_volume(build(StateId::coherent_product, 1.0));
    CHECK(std::abs(coh.volume) < 1e-6);
    CHECK(coh.converged);
    for (StateId id : {StateId::sigma_q_pp, StateId::sigma_q_pm})
      CHECK(std::abs(negativity_volume(build(id, 1.0)).volume) < 1e-6);

    const NegativityResult pp = negativity_volume(build(StateId::rho_pp, 0.5));
    const NegativityResult pm = negativity_volume(build(StateId::rho_pm, 0.5));
    CHECK(pp.converged);
    CHECK(pm.converged);
    CHECK(pm.volume < pp.volume);
    // Reference values from a 192-node run (384 nodes agrees to 1e-6).
    CHECK(std::abs(pp.volume - 0.031556267141) < 1e-3 * 0.031556267141);
    CHECK(std::abs(pm.volume - 0.022526117341) < 1e-3 * 0.022526117341);
  }

  TEST_CASE("threaded accumulation is bit-identical") {
    const DyadOperator pm = build(StateId::rho_pm, 0.7);
    const VolumeEstimate one = wigner_integrals(pm, 48, 4.0, 1), three = wigner_integrals(pm, 48, 4.0, 3);
    CHECK(one.absolute == three.absolute);
    CHECK(one.signed_ == three.signed_);
  }

  TEST_CASE("doubling stops at the cap and reports non-convergence") {
    QuadratureSpec spec;
    spec.nodes = 8;
    spec.max_nodes = 16;
    spec.rel_tol = 1e-12;
    const NegativityResult r = negativity_volume(build(StateId::rho_pp, 1.5), spec);
    CHECK(r.nodes == 16);
    CHECK_FALSE(r.converged);
  }
}
