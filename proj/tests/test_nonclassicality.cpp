#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fock_oracle.hpp"
#include "phasecorr/catalog.hpp"
#include "phasecorr/nonclassicality.hpp"

using namespace phasecorr;

namespace {

double closed_form_q(double g) {
  const double b2 = std::exp(-4.0 * g * g);
  return -g * g * b2 * (2 - b2) / (1 - b2);
}

bool bare_mode(const SU2ModeParams& p, double tol) {
  return p.theta < tol || std::numbers::pi / 2 - p.theta < tol;
}

}  // namespace

TEST_SUITE("nonclassicality") {
  TEST_CASE("per-mode Mandel Q") {
    CHECK(std::abs(mandel_q_mode(build(StateId::coherent_product, Complex(0.9, -0.4)), 0)) < 1e-12);
    CHECK(std::abs(mandel_q_mode(build(StateId::rho_pp, 1.0), 0) - closed_form_q(1.0)) < 1e-12);
    CHECK(std::abs(mandel_q_mode(build(StateId::rho_pp, 1.0), 0) + 0.036972999253) < 1e-11);
    CHECK(std::abs(mandel_q_mode(build(StateId::rho_pp, 0.01), 0) + 0.25) < 1e-4);
    CHECK_THROWS_AS(mandel_q_mode(build(StateId::coherent_product, 0.0), 0), NumericalError);
    CHECK_THROWS_AS(mandel_q_mode(build(StateId::rho_pp, 1.0), 2), InvalidArgument);

    const auto oracle = fock::build(StateId::rho_pm, 0.7, fock::photon_cutoff(0.7) + 1);
    const double n = fock::moment(oracle, 0, 0, 1, 1).real(), pairs = fock::moment(oracle, 0, 0, 2, 2).real();
    CHECK(std::abs(mandel_q_mode(build(StateId::rho_pm, 0.7), 1) - (pairs - n * n) / n) < 1e-10);
  }

  TEST_CASE("the two mixtures share Q on both modes") {
    for (double g : {0.1, 0.5, 1.0, 1.7, 2.5})
      for (int mode : {0, 1})
        CHECK(std::abs(mandel_q_mode(build(StateId::rho_pp, g), mode) - mandel_q_mode(build(StateId::rho_pm, g), mode)) <
              1e-10);
  }

  TEST_CASE("Q depends only on |gamma|") {
    const Complex g = std::polar(1.2, 0.9);
    CHECK(std::abs(mandel_q_mode(build(StateId::rho_pp, g), 0) - mandel_q_mode(build(StateId::rho_pp, 1.2), 0)) < 1e-10);
    CHECK(std::abs(mandel_q_su2(build(StateId::rho_pm, g)).q - mandel_q_su2(build(StateId::rho_pm, 1.2)).q) < 1e-8);
  }

  TEST_CASE("combined-mode Q") {
    const DyadOperator pp = build(StateId::rho_pp, 0.8);
    CHECK(std::abs(mandel_q_su2_at(pp, {0.0, 0.0}) - mandel_q_mode(pp, 0)) < 1e-12);
    CHECK(std::abs(mandel_q_su2_at(pp, {std::numbers::pi / 2, 1.3}) - mandel_q_mode(pp, 1)) < 1e-12);

    const DyadOperator coh = build(StateId::coherent_product, Complex(0.5, 0.5));
    for (double th : {0.0, 0.4, 1.1})
      for (double ph : {0.0, 2.0, 4.5}) CHECK(std::abs(mandel_q_su2_at(coh, {th, ph})) < 1e-10);
    CHECK(std::abs(mandel_q_su2(coh).q) < 1e-10);
  }

  TEST_CASE("SU(2) minimization recovers the bare-mode optimum") {
    const MandelMinimum pp = mandel_q_su2(build(StateId::rho_pp, 1.0));
    CHECK(bare_mode(pp.argmin, 1e-3));
    CHECK(std::abs(pp.q - closed_form_q(1.0)) < 1e-6);
    const MandelMinimum pm = mandel_q_su2(build(StateId::rho_pm, 1.0));
    CHECK(std::abs(pm.q - pp.q) < 1e-8);
    for (StateId id : {StateId::rho_pp, StateId::rho_pm, StateId::sigma_c_pp})
      for (double g : {0.5, 1.3}) {
        const DyadOperator rho = build(id, g);
        const double best = mandel_q_su2(rho).q;
        CHECK(best <= mandel_q_mode(rho, 0) + 1e-12);
        CHECK(best <= mandel_q_mode(rho, 1) + 1e-12);
      }
  }

  TEST_CASE("squeezing witnesses") {
    const Squeezing vac = squeezing_d(build(StateId::coherent_product, 0.0));
    CHECK(std::abs(vac.d1) < 1e-14);
    CHECK(std::abs(vac.d2) < 1e-14);

    const double big = std::exp(-2.0), b2 = big * big;
    const Squeezing pm = squeezing_d(build(StateId::rho_pm, 1.0));
    CHECK(std::abs(pm.d1 - 2.0 / (1 - b2)) < 1e-10);
    CHECK(std::abs(pm.d2 - 2.0 * b2 / (1 - b2)) < 1e-10);
    const Squeezing pp = squeezing_d(build(StateId::rho_pp, 1.0));
    CHECK(std::abs(pp.d1 - (pm.d1 + 4.0)) < 1e-10);
    CHECK(std::abs(pp.d2 - pm.d2) < 1e-10);

    for (StateId id : {StateId::rho_pp, StateId::rho_pm, StateId::sigma_q_pp, StateId::sigma_q_pm,
                       StateId::sigma_c_pp, StateId::sigma_c_pm})
      for (Complex g : {Complex(0.2), Complex(1.0, 0.6), Complex(2.4)}) {
        const Squeezing d = squeezing_d(build(id, g));
        CHECK(d.d1 >= -1e-10);
        CHECK(d.d2 >= -1e-10);
      }
  }
}
