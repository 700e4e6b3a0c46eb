#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace phasecorr {

struct SimplexOptions {
  double initial_step = 0.1;
  double x_tol = 1e-8;   // simplex diameter
  double f_tol = 1e-14;  // spread of function values
  int max_evals = 4000;
};

template <typename Scalar>
struct SimplexResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value;
  int evaluations;
};

/// Nelder-Mead downhill simplex (minimization). Standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <typename Scalar, typename F>
SimplexResult<Scalar> nelder_mead(F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& start,
                                  const SimplexOptions& opt = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(start.size());
  std::vector<Vec> pts(n + 1, start);
  std::vector<Scalar> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += opt.initial_step;
  int evals = 0;
  auto eval = [&](const Vec& x) {
    ++evals;
    return static_cast<Scalar>(f(x));
  };
  for (int i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  while (evals < opt.max_evals) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front(), worst = order.back(), second = order[n - 1];

    Scalar diameter = 0;
    for (int i = 0; i <= n; ++i) diameter = std::max(diameter, (pts[i] - pts[best]).norm());
    if (diameter < opt.x_tol || std::abs(vals[worst] - vals[best]) < opt.f_tol) break;

    Vec centroid = Vec::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= Scalar(n);

    Vec reflected = centroid + (centroid - pts[worst]);
    Scalar fr = eval(reflected);
    if (fr < vals[best]) {
      Vec expanded = centroid + Scalar(2) * (centroid - pts[worst]);
      Scalar fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    Vec contracted = outside ? Vec(centroid + Scalar(0.5) * (reflected - centroid))
                             : Vec(centroid + Scalar(0.5) * (pts[worst] - centroid));
    Scalar fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + Scalar(0.5) * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], evals};
}

/// Quasi-uniform points on the unit sphere (Fibonacci lattice).
inline std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / count;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

}  // namespace phasecorr
