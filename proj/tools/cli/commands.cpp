#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>

#include "phasecorr/gaussian.hpp"
#include "phasecorr/nonclassicality.hpp"
#include "phasecorr/qubit.hpp"

namespace phasecorr::cli {

namespace {

const std::vector<std::pair<std::string, StateId>>& state_tokens() {
  static const std::vector<std::pair<std::string, StateId>> tokens{
      {"pp", StateId::rho_pp},       {"pm", StateId::rho_pm},       {"q_pp", StateId::sigma_q_pp},
      {"q_pm", StateId::sigma_q_pm}, {"c_pp", StateId::sigma_c_pp}, {"c_pm", StateId::sigma_c_pm},
  };
  return tokens;
}

const std::vector<std::pair<std::string, Quantity>>& quantity_names() {
  static const std::vector<std::pair<std::string, Quantity>> names{
      {"neg", Quantity::neg},         {"ng", Quantity::ng},         {"q_mandel", Quantity::q_mandel},
      {"q_su2", Quantity::q_su2},     {"d", Quantity::squeezing},   {"discord", Quantity::discord},
      {"lqu", Quantity::lqu},         {"dg", Quantity::dg},         {"i", Quantity::mi},
      {"j", Quantity::j},             {"rank", Quantity::rank},     {"tdet", Quantity::tdet},
  };
  return names;
}

std::vector<std::string> column_stems(Quantity q) {
  switch (q) {
    case Quantity::squeezing: return {"d1", "d2"};
    case Quantity::mi: return {"i"};
    default:
      for (const auto& [name, value] : quantity_names())
        if (value == q) return {name};
  }
  return {};
}

// Everything one state contributes to a sweep row, computed on demand.
class StateMeasures {
 public:
  StateMeasures(StateId id, double gamma, const Settings& settings)
      : id_(id), gamma_(gamma), settings_(settings), rho_(build(id, gamma)) {}

  std::vector<double> values(Quantity q) {
    switch (q) {
      case Quantity::neg: return {negativity().volume};
      case Quantity::ng: return {non_gaussianity(rho_, settings_.ng_log_base)};
      case Quantity::q_mandel: return {mandel_q_mode(rho_, 0)};
      case Quantity::q_su2: return {mandel_q_su2(rho_).q};
      case Quantity::squeezing: {
        const Squeezing d = squeezing_d(rho_);
        return {d.d1, d.d2};
      }
      case Quantity::discord: return {quantum_discord(qubit(), settings_.log_base)};
      case Quantity::lqu: return {lqu(qubit())};
      case Quantity::dg: return {geometric_discord(qubit())};
      case Quantity::mi: return {mutual_information(qubit(), settings_.log_base)};
      case Quantity::j: return {classical_correlation(qubit(), settings_.log_base).value};
      case Quantity::rank: return {static_cast<double>(correlation_rank(qubit()))};
      case Quantity::tdet: return {t_det(qubit())};
    }
    return {};
  }

  const NegativityResult& negativity() {
    if (!negativity_) negativity_ = negativity_volume(rho_, settings_.quad);
    return *negativity_;
  }

 private:
  const QubitDensityMatrix& qubit() {
    if (!qubit_) qubit_ = qubit_matrix(rho_, gamma_);
    return *qubit_;
  }

  StateId id_;
  double gamma_;
  const Settings& settings_;
  DyadOperator rho_;
  std::optional<NegativityResult> negativity_;
  std::optional<QubitDensityMatrix> qubit_;
};

std::string cell(double v, int width, int precision = 6) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -precision)) v = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*.*f", width, precision, v);
  return buf;
}

std::string cell(const std::string& s, int width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*s", width, s.c_str());
  return buf;
}

}  // namespace

StateId parse_state_token(const std::string& token) {
  for (const auto& [name, id] : state_tokens())
    if (name == token) return id;
  if (const auto id = parse_state(token)) return *id;
  throw UsageError("unknown state '" + token + "'");
}

std::string state_token(StateId id) {
  for (const auto& [name, value] : state_tokens())
    if (value == id) return name;
  return std::string(state_name(id));
}

std::vector<Quantity> parse_quantities(const std::vector<std::string>& names) {
  if (names.empty()) throw UsageError("quantity list is empty");
  std::vector<bool> wanted(quantity_names().size(), false);
  for (const auto& n : names) {
    if (n == "all") {
      std::fill(wanted.begin(), wanted.end(), true);
      continue;
    }
    const auto& table = quantity_names();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == n; });
    if (it == table.end()) throw UsageError("unknown quantity '" + n + "'");
    wanted[static_cast<std::size_t>(it - table.begin())] = true;
  }
  std::vector<Quantity> out;
  for (std::size_t i = 0; i < wanted.size(); ++i)
    if (wanted[i]) out.push_back(quantity_names()[i].second);
  return out;
}

Table run_sweep(const std::vector<StateId>& states, const std::vector<Quantity>& quantities,
                const std::vector<double>& gammas, const Settings& settings,
                std::vector<std::vector<double>>* numeric) {
  if (states.empty()) throw UsageError("state list is empty");
  if (quantities.empty()) throw UsageError("quantity list is empty");
  for (StateId s : states)
    if (mode_count(s) != 2) throw UsageError("sweep states must be two-mode: " + state_token(s));
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0)) throw UsageError("sweep needs gamma > 0 (use `report --gamma 0` for the Fock limit)");
    if (i > 0 && !(gammas[i] > gammas[i - 1])) throw UsageError("gamma values must increase");
  }

  Table table;
  table.header = {"gamma", "Gamma"};
  for (Quantity q : quantities)
    for (const auto& stem : column_stems(q))
      for (StateId s : states) table.header.push_back(stem + "_" + state_token(s));
  const bool with_neg = std::find(quantities.begin(), quantities.end(), Quantity::neg) != quantities.end();
  if (with_neg)
    for (StateId s : states) table.header.push_back("neg_" + state_token(s) + "_converged");

  for (double gamma : gammas) {
    std::vector<StateMeasures> measures;
    for (StateId s : states) measures.emplace_back(s, gamma, settings);
    std::vector<double> values{gamma, cat_overlap(gamma)};
    for (Quantity q : quantities) {
      std::vector<std::vector<double>> per_state;
      for (auto& m : measures) per_state.push_back(m.values(q));
      for (std::size_t k = 0; k < per_state.front().size(); ++k)
        for (const auto& v : per_state) values.push_back(v[k]);
    }
    Row row;
    for (double v : values) {
      if (!std::isfinite(v)) throw NumericalError("non-finite value in sweep row");
      row.push_back(format_number(v));
    }
    if (with_neg)
      for (auto& m : measures) {
        const bool ok = m.negativity().converged;
        table.converged = table.converged && ok;
        row.push_back(ok ? "true" : "false");
      }
    table.rows.push_back(std::move(row));
    if (numeric) numeric->push_back(std::move(values));
  }
  return table;
}

Table run_wigner(const WignerRequest& request, std::vector<std::vector<double>>* surface) {
  const DyadOperator rho = build(request.state, request.gamma);
  const std::vector<double> axis = request.grid.values();
  Table table;
  const bool two = rho.modes() == 2;
  table.header = two ? Row{"x1", "y1", "x2", "y2", "W"} : Row{"x", "y", "W"};
  if (surface) surface->assign(axis.size(), std::vector<double>(axis.size(), 0.0));
  const Complex fixed(request.fixed_x, request.fixed_y);
  for (std::size_t i = 0; i < axis.size(); ++i)
    for (std::size_t j = 0; j < axis.size(); ++j) {
      const Complex z(axis[i], axis[j]);
      const double w = two ? wigner(rho, z, fixed) : wigner(rho, z);
      if (surface) (*surface)[j][i] = w;
      Row row{format_number(axis[i]), format_number(axis[j])};
      if (two) {
        row.push_back(format_number(request.fixed_x));
        row.push_back(format_number(request.fixed_y));
      }
      row.push_back(format_number(w));
      table.rows.push_back(std::move(row));
    }
  return table;
}

void run_report(double gamma, const Settings& settings, std::ostream& out, bool& converged) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw UsageError("report needs a finite gamma >= 0");
  converged = true;
  const bool fock = gamma == 0.0;
  char line[256];
  std::snprintf(line, sizeof line, "gamma = %.6g   Gamma = exp(-2 gamma^2) = %.12g\n", gamma, cat_overlap(gamma));
  out << line;
  if (fock)
    out << "Fock-limit embedding: |e> -> |0>, |o> -> |1>; phase-space and moment columns are n/a at gamma = 0.\n";
  out << "info quantities in " << (settings.log_base == LogBase::Two ? "bits" : "nats") << ", ng in "
      << (settings.ng_log_base == LogBase::Two ? "bits" : "nats") << "\n\n";

  const std::vector<std::pair<std::string, int>> columns{
      {"state", 6}, {"neg", 10}, {"ng", 9},    {"Q_A", 10},  {"Q_min", 10}, {"D1", 9},   {"D2", 9}, {"I", 9},
      {"J", 9},     {"discord", 9}, {"LQU", 9}, {"D_G", 9}, {"rank", 5},    {"det_T", 10}};
  for (const auto& [name, width] : columns) out << cell(name, width) << ' ';
  out << '\n';

  std::map<StateId, double> volumes;
  const std::string na = "n/a";
  for (const auto& [token, id] : state_tokens()) {
    out << cell(token, 6) << ' ';
    if (fock) {
      for (int k = 0; k < 6; ++k) out << cell(na, columns[k + 1].second) << ' ';
    } else {
      const DyadOperator rho = build(id, gamma);
      const NegativityResult neg = negativity_volume(rho, settings.quad);
      volumes[id] = neg.volume;
      converged = converged && neg.converged;
      out << cell(neg.volume, 9) << (neg.converged ? ' ' : '*') << ' ';
      out << cell(non_gaussianity(rho, settings.ng_log_base), 9) << ' ';
      try {
        out << cell(mandel_q_mode(rho, 0), 10) << ' ' << cell(mandel_q_su2(rho).q, 10) << ' ';
      } catch (const NumericalError&) {
        out << cell(na, 10) << ' ' << cell(na, 10) << ' ';
      }
      const Squeezing d = squeezing_d(rho);
      out << cell(d.d1, 9, 5) << ' ' << cell(d.d2, 9, 5) << ' ';
    }
    const QubitDensityMatrix q = fock ? fock_limit_qubit_matrix(id) : qubit_matrix(build(id, gamma), gamma);
    out << cell(mutual_information(q, settings.log_base), 9) << ' '
        << cell(classical_correlation(q, settings.log_base).value, 9) << ' '
        << cell(quantum_discord(q, settings.log_base), 9) << ' ' << cell(lqu(q), 9) << ' '
        << cell(geometric_discord(q), 9) << ' ' << cell(std::to_string(correlation_rank(q)), 5) << ' '
        << cell(t_det(q), 10, 3) << '\n';
  }
  if (!fock) {
    const double gap = std::abs(volumes[StateId::rho_pp] - volumes[StateId::rho_pm]);
    std::snprintf(line, sizeof line, "\n|neg_pp - neg_pm| = %.6g  (%s 0.02)\n", gap, gap < 0.02 ? "below" : "not below");
    out << line;
    if (!converged) out << "* negativity quadrature did not reach the relative tolerance\n";
  }
}

Table run_minneg(const std::vector<StateId>& states, double gamma, const Settings& settings) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw UsageError("minneg needs a finite gamma > 0");
  Table table;
  table.header = {"state", "gamma", "neg", "neg_converged", "min_neg", "feasible", "min_converged", "a_phi",
                  "a_theta", "a_psi", "b_phi", "b_theta", "b_psi", "evaluations"};
  for (StateId id : states) {
    if (mode_count(id) != 2) throw UsageError("minneg states must be two-mode: " + state_token(id));
    const DyadOperator rho = build(id, gamma);
    const NegativityResult neg = negativity_volume(rho, settings.quad);
    const MinNegativityResult m = min_negativity(rho, gamma, settings.minneg, settings.quad);
    table.converged = table.converged && neg.converged && m.quadrature.converged;
    Row row{state_token(id), format_number(gamma), format_number(neg.volume), neg.converged ? "true" : "false",
            format_number(m.value), m.feasible ? "true" : "false", m.quadrature.converged ? "true" : "false"};
    for (double a : m.argmin.a) row.push_back(format_number(a));
    for (double b : m.argmin.b) row.push_back(format_number(b));
    row.push_back(std::to_string(m.evaluations));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace phasecorr::cli
