#include "phasecorr/catalog.hpp"

#include <utility>
#include <vector>

namespace phasecorr {

namespace {

ModeKet coherent(Complex label) { return ModeKet{{{Complex(1.0), label}}}; }

DyadOperator equal_mixture(std::vector<TwoModeKet> kets) {
  std::vector<std::pair<double, TwoModeKet>> parts;
  const double w = 1.0 / static_cast<double>(kets.size());
  for (auto& k : kets) parts.emplace_back(w, std::move(k));
  return mixture_to_dyads(parts);
}

DyadOperator equal_mixture(std::vector<ModeKet> kets) {
  std::vector<std::pair<double, ModeKet>> parts;
  const double w = 1.0 / static_cast<double>(kets.size());
  for (auto& k : kets) parts.emplace_back(w, std::move(k));
  return mixture_to_dyads(parts);
}

constexpr std::array<std::pair<StateId, std::string_view>, 10> kNames{{
    {StateId::rho_pp, "rho_pp"},
    {StateId::rho_pm, "rho_pm"},
    {StateId::sigma_q_pp, "sigma_q_pp"},
    {StateId::sigma_q_pm, "sigma_q_pm"},
    {StateId::sigma_c_pp, "sigma_c_pp"},
    {StateId::sigma_c_pm, "sigma_c_pm"},
    {StateId::marginal, "marginal"},
    {StateId::coherent_product, "coherent_product"},
    {StateId::even_cat, "even_cat"},
    {StateId::odd_cat, "odd_cat"},
}};

}  // namespace

std::string_view state_name(StateId id) {
  for (const auto& [key, name] : kNames)
    if (key == id) return name;
  return "unknown";
}

std::optional<StateId> parse_state(std::string_view name) {
  for (const auto& [key, label] : kNames)
    if (label == name) return key;
  return std::nullopt;
}

int mode_count(StateId id) {
  switch (id) {
    case StateId::marginal:
    case StateId::even_cat:
    case StateId::odd_cat:
      return 1;
    default:
      return 2;
  }
}

DyadOperator build(StateId id, Complex gamma) {
  if (!is_finite(gamma)) throw InvalidArgument("gamma must be finite");
  const ModeKet plus = coherent(gamma), minus = coherent(-gamma);
  switch (id) {
    case StateId::coherent_product:
      return equal_mixture(std::vector<TwoModeKet>{tensor(plus, plus)});
    case StateId::sigma_q_pp:
      return equal_mixture(std::vector<TwoModeKet>{tensor(plus, plus), tensor(minus, minus)});
    case StateId::sigma_q_pm:
      return equal_mixture(std::vector<TwoModeKet>{tensor(plus, minus), tensor(minus, plus)});
    default:
      break;
  }
  const CatPair cats = cat_kets(gamma);
  const ModeKet &e = cats.even, &o = cats.odd;
  switch (id) {
    case StateId::rho_pp:
      return equal_mixture(
          std::vector<TwoModeKet>{tensor(plus, plus), tensor(minus, minus), tensor(e, e), tensor(o, o)});
    case StateId::rho_pm:
      return equal_mixture(
          std::vector<TwoModeKet>{tensor(plus, minus), tensor(minus, plus), tensor(e, o), tensor(o, e)});
    case StateId::sigma_c_pp:
      return equal_mixture(std::vector<TwoModeKet>{tensor(e, e), tensor(o, o)});
    case StateId::sigma_c_pm:
      return equal_mixture(std::vector<TwoModeKet>{tensor(e, o), tensor(o, e)});
    case StateId::marginal:
      return equal_mixture(std::vector<ModeKet>{plus, minus, e, o});
    case StateId::even_cat:
      return equal_mixture(std::vector<ModeKet>{e});
    case StateId::odd_cat:
      return equal_mixture(std::vector<ModeKet>{o});
    default:
      throw InvalidArgument("unknown state id");
  }
}

QubitDensityMatrix fock_limit_qubit_matrix(StateId id) {
  // |g>, |-g>, |e> -> |0>; |o> -> |1>; index = 2 * A + B
  Eigen::Vector4d diag;
  switch (id) {
    case StateId::rho_pp: diag << 0.75, 0.0, 0.0, 0.25; break;
    case StateId::rho_pm: diag << 0.5, 0.25, 0.25, 0.0; break;
    case StateId::sigma_q_pp:
    case StateId::sigma_q_pm:
    case StateId::coherent_product: diag << 1.0, 0.0, 0.0, 0.0; break;
    case StateId::sigma_c_pp: diag << 0.5, 0.0, 0.0, 0.5; break;
    case StateId::sigma_c_pm: diag << 0.0, 0.5, 0.5, 0.0; break;
    default: throw InvalidArgument("Fock-limit embedding is defined for two-mode states only");
  }
  return QubitDensityMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix(), Complex(0.0));
}

DyadOperator channel_phi(const DyadOperator& rho, Complex gamma) {
  const Eigen::Matrix4cd m = qubit_matrix(rho, gamma).matrix();
  // Phi keeps only the cat-basis populations and relabels e -> g, o -> -g.
  std::vector<DyadTerm> terms;
  for (int k = 0; k < 4; ++k) {
    const Complex a = (k >> 1) == 0 ? gamma : -gamma;
    const Complex b = (k & 1) == 0 ? gamma : -gamma;
    terms.push_back({m(k, k), {a, b}, {a, b}});
  }
  return DyadOperator(2, std::move(terms));
}

DyadOperator apply_local_sx(const DyadOperator& rho, Side side, Complex gamma) {
  const Eigen::Matrix4cd m = qubit_matrix(rho, gamma).matrix();
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) flip(side == Side::A ? (k ^ 2) : (k ^ 1), k) = 1.0;
  return qubit_to_dyads(flip * m * flip.adjoint(), gamma);
}

}  // namespace phasecorr
