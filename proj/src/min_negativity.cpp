#include "phasecorr/min_negativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "phasecorr/optimize.hpp"
#include "phasecorr/qubit.hpp"

namespace phasecorr {

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

LocalUnitaryParams from_vector(const Eigen::VectorXd& v) {
  return {{v(0), v(1), v(2)}, {v(3), v(4), v(5)}};
}

Eigen::VectorXd to_vector(const LocalUnitaryParams& p) {
  Eigen::VectorXd v(6);
  v << p.a[0], p.a[1], p.a[2], p.b[0], p.b[1], p.b[2];
  return v;
}

struct Candidate {
  double value;
  LocalUnitaryParams params;
};

// Lower value first, then smaller parameter norm.
bool better(const Candidate& x, const Candidate& y) {
  if (x.value != y.value) return x.value < y.value;
  return x.params.norm() < y.params.norm();
}

}  // namespace

double LocalUnitaryParams::norm() const { return to_vector(*this).norm(); }

Eigen::Matrix2cd zyz_unitary(const std::array<double, 3>& angles) {
  auto rz = [](double t) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -0.5 * t);
    m(1, 1) = std::polar(1.0, 0.5 * t);
    return m;
  };
  Eigen::Matrix2cd ry;
  const double c = std::cos(0.5 * angles[1]), s = std::sin(0.5 * angles[1]);
  ry << c, -s, s, c;
  return rz(angles[0]) * ry * rz(angles[2]);
}

DyadOperator apply_local_unitaries(const DyadOperator& rho, Complex gamma, const LocalUnitaryParams& params) {
  const Eigen::Matrix4cd m = qubit_matrix(rho, gamma).matrix();
  const Eigen::Matrix2cd ua = zyz_unitary(params.a), ub = zyz_unitary(params.b);
  Eigen::Matrix4cd u;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = ua(i, j) * ub;
  return qubit_to_dyads(u * m * u.adjoint(), gamma);
}

bool marginals_classical(const DyadOperator& rho, Complex gamma, double tolerance, int probe_points) {
  const double half_width = std::abs(gamma) + 4.0;
  for (int side = 0; side < 2; ++side)
    if (wigner_grid_minimum(partial_trace(rho, side), half_width, probe_points) < -tolerance) return false;
  return true;
}

MinNegativityResult min_negativity(const DyadOperator& rho, Complex gamma, const MinNegativitySearch& search,
                                   const QuadratureSpec& quad) {
  if (rho.modes() != 2) throw InvalidArgument("minimum negativity requires a two-mode state");
  if (search.points < 1 || search.seeds < 1) throw InvalidArgument("minimum-negativity search needs points and seeds");
  MinNegativityResult result;

  // Feasible transformed state or nullopt.
  auto transformed = [&](const LocalUnitaryParams& p) -> std::optional<DyadOperator> {
    DyadOperator out = p.norm() == 0.0 ? rho : apply_local_unitaries(rho, gamma, p);
    if (!marginals_classical(out, gamma, search.classical_tolerance, search.probe_points)) return std::nullopt;
    return out;
  };
  auto objective = [&](const LocalUnitaryParams& p, int nodes) {
    ++result.evaluations;
    const auto state = transformed(p);
    if (!state) return kInfeasible;
    return wigner_integrals(*state, nodes, quad.margin, quad.threads).absolute - 1.0;
  };

  // Grid: phi, psi uniform on [0, 2 pi), theta inclusive on [0, pi].
  std::vector<double> phase, tilt;
  for (int k = 0; k < search.points; ++k) {
    phase.push_back(2.0 * std::numbers::pi * k / search.points);
    tilt.push_back(search.points == 1 ? 0.0 : std::numbers::pi * k / (search.points - 1));
  }
  std::vector<std::array<double, 3>> side;
  for (double phi : phase)
    for (double theta : tilt)
      for (double psi : phase) side.push_back({phi, theta, psi});

  std::vector<Candidate> grid;
  for (const auto& a : side)
    for (const auto& b : side) {
      const LocalUnitaryParams p{a, b};
      const double v = objective(p, search.coarse_nodes);
      if (std::isfinite(v)) grid.push_back({v, p});
    }
  std::stable_sort(grid.begin(), grid.end(), better);

  std::vector<Candidate> finalists;
  SimplexOptions opt;
  opt.initial_step = std::numbers::pi / (2.0 * search.points);
  opt.x_tol = search.x_tol;
  opt.f_tol = 0.0;
  opt.max_evals = search.max_refine_evals;
  const int seeds = std::min<int>(search.seeds, static_cast<int>(grid.size()));
  for (int s = 0; s < seeds; ++s) {
    const auto refined = nelder_mead<double>(
        [&](const Eigen::VectorXd& x) { return objective(from_vector(x), search.refine_nodes); },
        to_vector(grid[s].params), opt);
    finalists.push_back({refined.value, from_vector(refined.x)});
  }
  finalists.push_back({0.0, LocalUnitaryParams{}});  // identity

  // Final ranking with the full quadrature policy.
  bool first = true;
  for (const auto& f : finalists) {
    const auto state = transformed(f.params);
    if (!state) continue;
    const NegativityResult q = negativity_volume(*state, quad);
    const Candidate c{q.volume, f.params};
    if (first || better(c, {result.value, result.argmin})) {
      result.value = q.volume;
      result.argmin = f.params;
      result.quadrature = q;
      result.feasible = true;
      first = false;
    }
  }
  if (!result.feasible) {
    result.quadrature = negativity_volume(rho, quad);
    result.value = result.quadrature.volume;
    result.argmin = {};
  }
  return result;
}

}  // namespace phasecorr
