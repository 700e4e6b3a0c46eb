#include "phasecorr/phase_space.hpp"

#include "separable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace phasecorr {

namespace detail {

namespace {

int pair_index(std::vector<LabelPair>& list, Complex ket, Complex bra) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (std::abs(list[i].first - ket) < 1e-13 && std::abs(list[i].second - bra) < 1e-13)
      return static_cast<int>(i);
  list.emplace_back(ket, bra);
  return static_cast<int>(list.size() - 1);
}

}  // namespace

SeparableForm separate(const DyadOperator& rho) {
  SeparableForm form;
  const int last = rho.modes() - 1;
  std::vector<std::pair<int, int>> slots;
  for (const auto& t : rho.terms()) {
    int p = rho.modes() == 2 ? pair_index(form.outer, t.ket[0], t.bra[0]) : 0;
    int q = pair_index(form.inner, t.ket[last], t.bra[last]);
    slots.emplace_back(p, q);
  }
  const int rows = rho.modes() == 2 ? static_cast<int>(form.outer.size()) : 1;
  form.coeff = Eigen::MatrixXcd::Zero(rows, static_cast<int>(form.inner.size()));
  std::size_t k = 0;
  for (const auto& t : rho.terms()) {
    form.coeff(slots[k].first, slots[k].second) += t.coeff;
    ++k;
  }
  return form;
}

Rule gauss_legendre(int n, double lo, double hi) {
  Rule r{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = mid - half * z;
    r.x[n - 1 - i] = mid + half * z;
    r.w[i] = r.w[n - 1 - i] = half * w;
  }
  return r;
}

}  // namespace detail

namespace {

using detail::kTwoOverPi;

template <typename Kernel>
double separable_minimum(const DyadOperator& rho, double half_width, int points, Kernel&& kernel) {
  if (points < 1 || !(half_width > 0.0)) throw InvalidArgument("probe grid needs points >= 1 and half_width > 0");
  const detail::SeparableForm form = detail::separate(rho);
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(points) * points);
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      const double x = points == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (points - 1);
      const double y = points == 1 ? 0.0 : -half_width + 2.0 * half_width * j / (points - 1);
      grid.emplace_back(x, y);
    }
  auto table = [&](const std::vector<detail::LabelPair>& pairs) {
    Eigen::MatrixXcd t(static_cast<int>(grid.size()), static_cast<int>(pairs.size()));
    for (std::size_t g = 0; g < grid.size(); ++g)
      for (std::size_t p = 0; p < pairs.size(); ++p)
        t(static_cast<int>(g), static_cast<int>(p)) = kernel(pairs[p].first, pairs[p].second, grid[g]);
    return t;
  };
  const Eigen::MatrixXcd inner = table(form.inner);
  double lowest = std::numeric_limits<double>::max();
  if (rho.modes() == 1) {
    Eigen::VectorXcd v = inner * form.coeff.row(0).transpose();
    for (int g = 0; g < v.size(); ++g) lowest = std::min(lowest, v(g).real());
    return lowest;
  }
  const Eigen::MatrixXcd outer = table(form.outer);
  const Eigen::MatrixXcd reduced = outer * form.coeff;  // grid x inner
  for (int g = 0; g < reduced.rows(); ++g) {
    Eigen::VectorXcd v = inner * reduced.row(g).transpose();
    for (int k = 0; k < v.size(); ++k) lowest = std::min(lowest, v(k).real());
  }
  return lowest;
}

Complex husimi_factor(Complex ket, Complex bra, Complex z) {
  return std::exp(log_overlap(ket, z) + log_overlap(z, bra)) / std::numbers::pi;
}

}  // namespace

Complex wigner_dyad_kernel(Complex ket, Complex bra, Complex z) {
  return kTwoOverPi * std::exp(log_overlap(ket, bra) - 2.0 * (z - ket) * (std::conj(z) - std::conj(bra)));
}

namespace {

template <typename Factor>
double evaluate_real(const DyadOperator& rho, std::span<const Complex> z, Factor&& factor, const char* what) {
  if (static_cast<int>(z.size()) != rho.modes()) throw InvalidArgument("one phase point per mode required");
  for (Complex p : z)
    if (!is_finite(p)) throw InvalidArgument("phase point must be finite");
  Complex sum = 0.0;
  double scale = 0.0;
  for (const auto& t : rho.terms()) {
    Complex v = t.coeff;
    for (int m = 0; m < rho.modes(); ++m) v *= factor(t.ket[m], t.bra[m], z[m]);
    sum += v;
    scale += std::abs(v);
  }
  if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, scale))
    throw NumericalError(std::string(what) + ": imaginary residue above tolerance (operator not Hermitian?)");
  return sum.real();
}

}  // namespace

double wigner(const DyadOperator& rho, std::span<const Complex> z) {
  return evaluate_real(rho, z, wigner_dyad_kernel, "wigner");
}
double wigner(const DyadOperator& rho, Complex z) { return wigner(rho, std::span<const Complex>(&z, 1)); }
double wigner(const DyadOperator& rho, Complex z1, Complex z2) {
  const std::array<Complex, 2> z{z1, z2};
  return wigner(rho, z);
}

double husimi(const DyadOperator& rho, std::span<const Complex> z) {
  return evaluate_real(rho, z, husimi_factor, "husimi");
}
double husimi(const DyadOperator& rho, Complex z) { return husimi(rho, std::span<const Complex>(&z, 1)); }
double husimi(const DyadOperator& rho, Complex z1, Complex z2) {
  const std::array<Complex, 2> z{z1, z2};
  return husimi(rho, z);
}

double wigner_grid_minimum(const DyadOperator& rho, double half_width, int points) {
  return separable_minimum(rho, half_width, points, wigner_dyad_kernel);
}

double husimi_grid_minimum(const DyadOperator& rho, double half_width, int points) {
  return separable_minimum(rho, half_width, points, husimi_factor);
}

}  // namespace phasecorr
