#include "phasecorr/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phasecorr {

namespace {

bool same_label(Complex a, Complex b) {
  return std::abs(a - b) <= 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

bool same_labels(const DyadTerm& x, const DyadTerm& y, int modes) {
  for (int m = 0; m < modes; ++m) {
    if (!same_label(x.ket[m], y.ket[m]) || !same_label(x.bra[m], y.bra[m])) return false;
  }
  return true;
}

// Merge terms with identical labels, preserving first-appearance order.
std::vector<DyadTerm> merge_terms(int modes, std::vector<DyadTerm> terms) {
  std::vector<DyadTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const DyadTerm& m) { return same_labels(m, t, modes); });
    if (it == merged.end())
      merged.push_back(t);
    else
      it->coeff += t.coeff;
  }
  std::erase_if(merged, [](const DyadTerm& t) {
    return std::abs(t.coeff) < DyadOperator::kPruneTolerance;
  });
  return merged;
}

Complex term_overlap(const DyadTerm& t, int modes) {
  Complex v = 1.0;
  for (int m = 0; m < modes; ++m) v *= overlap(t.ket[m], t.bra[m]);
  return v;
}

}  // namespace

Complex overlap(Complex alpha, Complex beta) { return std::exp(log_overlap(alpha, beta)); }

double ModeKet::norm_squared() const { return inner(*this, *this).real(); }

ModeKet ModeKet::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw InvalidArgument("ModeKet has zero norm");
  ModeKet out = *this;
  for (auto& t : out.terms) t.coeff /= std::sqrt(n2);
  return out;
}

Complex inner(const ModeKet& a, const ModeKet& b) {
  Complex s = 0.0;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) s += std::conj(x.coeff) * y.coeff * overlap(y.label, x.label);
  return s;
}

Complex inner(const ModeKet& a, Complex label) {
  Complex s = 0.0;
  for (const auto& x : a.terms) s += std::conj(x.coeff) * overlap(label, x.label);
  return s;
}

double TwoModeKet::norm_squared() const {
  Complex s = 0.0;
  for (const auto& x : terms)
    for (const auto& y : terms)
      s += std::conj(x.coeff) * y.coeff * overlap(y.a, x.a) * overlap(y.b, x.b);
  return s.real();
}

TwoModeKet tensor(const ModeKet& a, const ModeKet& b) {
  TwoModeKet out;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) out.terms.push_back({x.coeff * y.coeff, x.label, y.label});
  return out;
}

CatPair cat_kets(Complex gamma) {
  const double one_minus = -std::expm1(-2.0 * std::norm(gamma));
  if (one_minus < 1e-14)
    throw DegenerateCatError("odd cat state undefined for |gamma| -> 0; use the Fock-limit basis");
  const double one_plus = 2.0 - one_minus;
  const double ne = 1.0 / std::sqrt(2.0 * one_plus);
  const double no = 1.0 / std::sqrt(2.0 * one_minus);
  return {ModeKet{{{ne, gamma}, {ne, -gamma}}}, ModeKet{{{no, gamma}, {-no, -gamma}}}};
}

DyadOperator::DyadOperator(int modes, std::vector<DyadTerm> terms) : modes_(modes) {
  if (modes != 1 && modes != 2) throw InvalidArgument("DyadOperator supports 1 or 2 modes");
  for (const auto& t : terms) {
    bool ok = is_finite(t.coeff);
    for (int m = 0; m < modes; ++m) ok = ok && is_finite(t.ket[m]) && is_finite(t.bra[m]);
    if (!ok) throw InvalidArgument("non-finite dyad coefficient or label");
  }
  if (modes == 1) {
    for (auto& t : terms) t.ket[1] = t.bra[1] = 0.0;
  }
  terms_ = merge_terms(modes, std::move(terms));
}

Complex DyadOperator::trace() const {
  Complex s = 0.0;
  for (const auto& t : terms_) s += t.coeff * term_overlap(t, modes_);
  return s;
}

double DyadOperator::hermiticity_defect() const {
  double scale = 1.0;
  for (const auto& t : terms_) scale = std::max(scale, std::abs(t.coeff));
  double worst = 0.0;
  for (const auto& t : terms_) {
    DyadTerm swapped{t.coeff, t.bra, t.ket};
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const DyadTerm& u) { return same_labels(u, swapped, modes_); });
    const double d = it == terms_.end() ? std::abs(t.coeff) : std::abs(it->coeff - std::conj(t.coeff));
    worst = std::max(worst, d / scale);
  }
  return worst;
}

DyadOperator DyadOperator::scaled(Complex s) const {
  std::vector<DyadTerm> t(terms_.begin(), terms_.end());
  for (auto& x : t) x.coeff *= s;
  return DyadOperator(modes_, std::move(t));
}

DyadOperator DyadOperator::rotated(int mode, Complex phase) const {
  if (mode < 0 || mode >= modes_) throw InvalidArgument("invalid mode id");
  std::vector<DyadTerm> t(terms_.begin(), terms_.end());
  for (auto& x : t) {
    x.ket[mode] *= phase;
    x.bra[mode] *= phase;
  }
  return DyadOperator(modes_, std::move(t));
}

DyadOperator operator+(const DyadOperator& a, const DyadOperator& b) {
  if (a.modes() != b.modes()) throw InvalidArgument("mode count mismatch");
  std::vector<DyadTerm> t(a.terms().begin(), a.terms().end());
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return DyadOperator(a.modes(), std::move(t));
}

bool approx_equal(const DyadOperator& a, const DyadOperator& b, double tol) {
  if (a.modes() != b.modes()) return false;
  auto covered = [&](const DyadOperator& x, const DyadOperator& y) {
    for (const auto& t : x.terms()) {
      Complex other = 0.0;
      for (const auto& u : y.terms())
        if (same_labels(t, u, x.modes())) other = u.coeff;
      if (std::abs(t.coeff - other) > tol) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

Complex trace_product(const DyadOperator& a, const DyadOperator& b) {
  if (a.modes() != b.modes()) throw InvalidArgument("mode count mismatch");
  // Tr(|a><b| |c><d|) = <b|c><d|a>
  Complex s = 0.0;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      Complex v = x.coeff * y.coeff;
      for (int m = 0; m < a.modes(); ++m) v *= overlap(y.ket[m], x.bra[m]) * overlap(x.ket[m], y.bra[m]);
      s += v;
    }
  return s;
}

namespace {

void check_weights(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("mixture weight must be nonnegative");
    total += w;
  }
  if (total <= 0.0) throw InvalidArgument("mixture weights sum to zero");
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("mixture weights must sum to 1");
}

}  // namespace

DyadOperator mixture_to_dyads(std::span<const std::pair<double, TwoModeKet>> components) {
  std::vector<double> w;
  for (const auto& c : components) w.push_back(c.first);
  check_weights(w);
  std::vector<DyadTerm> terms;
  for (const auto& [p, ket] : components) {
    if (p == 0.0) continue;
    const double n2 = ket.norm_squared();
    if (!(n2 > 0.0)) throw InvalidArgument("mixture component has zero norm");
    for (const auto& x : ket.terms)
      for (const auto& y : ket.terms)
        terms.push_back({p / n2 * x.coeff * std::conj(y.coeff), {x.a, x.b}, {y.a, y.b}});
  }
  return DyadOperator(2, std::move(terms));
}

DyadOperator mixture_to_dyads(std::span<const std::pair<double, ModeKet>> components) {
  std::vector<double> w;
  for (const auto& c : components) w.push_back(c.first);
  check_weights(w);
  std::vector<DyadTerm> terms;
  for (const auto& [p, ket] : components) {
    if (p == 0.0) continue;
    const double n2 = ket.norm_squared();
    if (!(n2 > 0.0)) throw InvalidArgument("mixture component has zero norm");
    for (const auto& x : ket.terms)
      for (const auto& y : ket.terms)
        terms.push_back({p / n2 * x.coeff * std::conj(y.coeff), {x.label, 0.0}, {y.label, 0.0}});
  }
  return DyadOperator(1, std::move(terms));
}

DyadOperator tensor(const DyadOperator& a, const DyadOperator& b) {
  if (a.modes() != 1 || b.modes() != 1) throw InvalidArgument("tensor expects single-mode operators");
  std::vector<DyadTerm> terms;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms())
      terms.push_back({x.coeff * y.coeff, {x.ket[0], y.ket[0]}, {x.bra[0], y.bra[0]}});
  return DyadOperator(2, std::move(terms));
}

DyadOperator partial_trace(const DyadOperator& rho, int keep) {
  if (rho.modes() != 2) throw InvalidArgument("partial_trace requires a two-mode operator");
  if (keep != 0 && keep != 1) throw InvalidArgument("invalid mode id");
  const int drop = 1 - keep;
  std::vector<DyadTerm> terms;
  for (const auto& t : rho.terms())
    terms.push_back({t.coeff * overlap(t.ket[drop], t.bra[drop]), {t.ket[keep], 0.0}, {t.bra[keep], 0.0}});
  return DyadOperator(1, std::move(terms));
}

double Spectrum::sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }

Spectrum spectrum(const DyadOperator& rho) {
  const int modes = rho.modes();
  using Labels = std::array<Complex, 2>;
  std::vector<Labels> basis;
  auto index_of = [&](const Labels& l) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      bool eq = true;
      for (int m = 0; m < modes; ++m) eq = eq && same_label(basis[i][m], l[m]);
      if (eq) return static_cast<int>(i);
    }
    basis.push_back(l);
    return static_cast<int>(basis.size() - 1);
  };
  std::vector<std::pair<int, int>> slots;
  for (const auto& t : rho.terms()) {
    int i = index_of(t.ket);
    int j = index_of(t.bra);
    slots.emplace_back(i, j);
  }
  const int dim = static_cast<int>(basis.size());
  if (dim == 0) return {};

  Eigen::MatrixXcd gram(dim, dim), coeff = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) {
      Complex g = 1.0;
      for (int k = 0; k < modes; ++k) g *= overlap(basis[n][k], basis[m][k]);
      gram(m, n) = g;
    }
  std::size_t k = 0;
  for (const auto& t : rho.terms()) {
    coeff(slots[k].first, slots[k].second) += t.coeff;
    ++k;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gram);
  const Eigen::VectorXd& gv = gs.eigenvalues();
  const double gmax = gv.maxCoeff();
  if (gv.minCoeff() < -1e-10 * gmax) throw NumericalError("Gram matrix is indefinite");
  std::vector<int> keep;
  for (int i = 0; i < dim; ++i)
    if (gv(i) > kGramRankCutoff * gmax) keep.push_back(i);
  Eigen::MatrixXcd half(dim, static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    half.col(static_cast<int>(c)) = gs.eigenvectors().col(keep[c]) * std::sqrt(gv(keep[c]));
  Eigen::MatrixXcd reduced = half.adjoint() * coeff * half;
  reduced = (0.5 * (reduced + reduced.adjoint())).eval();
  Eigen::VectorXd ev = hermitian_eigenvalues(reduced);

  Spectrum s;
  for (int i = 0; i < ev.size(); ++i) {
    double v = ev(i);
    // Round-off below zero is clamped; anything larger means rho is not a state.
    if (v < -1e-8) throw NumericalError("operator has a negative eigenvalue");
    s.eigenvalues.push_back(std::max(v, 0.0));
  }
  return s;
}

double von_neumann_entropy(const Spectrum& s, LogBase base) {
  return shannon_entropy(s.eigenvalues, base);
}

Complex normal_moment(const DyadOperator& rho, int m1, int n1, int m2, int n2) {
  if (m1 < 0 || n1 < 0 || m2 < 0 || n2 < 0) throw InvalidArgument("moment exponents must be nonnegative");
  if (rho.modes() == 1 && (m2 != 0 || n2 != 0)) throw InvalidArgument("mode 2 exponents on a one-mode state");
  const std::array<int, 2> cre{m1, m2}, ann{n1, n2};
  Complex s = 0.0;
  for (const auto& t : rho.terms()) {
    Complex v = t.coeff;
    for (int m = 0; m < rho.modes(); ++m)
      v *= std::pow(std::conj(t.bra[m]), cre[m]) * std::pow(t.ket[m], ann[m]) * overlap(t.ket[m], t.bra[m]);
    s += v;
  }
  return s;
}

}  // namespace phasecorr
