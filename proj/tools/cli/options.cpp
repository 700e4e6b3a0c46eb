#include "cli/options.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace phasecorr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(what + " must be an integer: '" + text + "'");
  return static_cast<int>(v);
}

int positive_int(const std::string& text, const std::string& what) {
  const int v = parse_int(text, what);
  if (v < 1) throw UsageError(what + " must be positive");
  return v;
}

double positive_number(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (!(v > 0.0)) throw UsageError(what + " must be positive");
  return v;
}

LogBase parse_base(const std::string& v, const std::string& what) {
  if (v == "2") return LogBase::Two;
  if (v == "e") return LogBase::E;
  throw UsageError(what + " must be 2 or e");
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw UsageError("invalid " + what + ": '" + text + "'");
  return v;
}

void apply_setting(Settings& s, const std::string& key, const std::string& value) {
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"nodes", [&](const std::string& v) { s.quad.nodes = positive_int(v, key); }},
      {"margin", [&](const std::string& v) { s.quad.margin = positive_number(v, key); }},
      {"max_nodes", [&](const std::string& v) { s.quad.max_nodes = positive_int(v, key); }},
      {"rel_tol", [&](const std::string& v) { s.quad.rel_tol = positive_number(v, key); }},
      {"threads", [&](const std::string& v) { s.quad.threads = positive_int(v, key); }},
      {"log_base", [&](const std::string& v) { s.log_base = parse_base(v, key); }},
      {"ng_log_base", [&](const std::string& v) { s.ng_log_base = parse_base(v, key); }},
      {"probe_points", [&](const std::string& v) { s.probe_points = positive_int(v, key); }},
      {"minneg_points", [&](const std::string& v) { s.minneg.points = positive_int(v, key); }},
      {"minneg_coarse_nodes", [&](const std::string& v) { s.minneg.coarse_nodes = positive_int(v, key); }},
      {"minneg_seeds", [&](const std::string& v) { s.minneg.seeds = positive_int(v, key); }},
      {"minneg_refine_nodes", [&](const std::string& v) { s.minneg.refine_nodes = positive_int(v, key); }},
      {"minneg_max_evals", [&](const std::string& v) { s.minneg.max_refine_evals = positive_int(v, key); }},
      {"minneg_x_tol", [&](const std::string& v) { s.minneg.x_tol = positive_number(v, key); }},
      {"classical_tolerance", [&](const std::string& v) { s.minneg.classical_tolerance = positive_number(v, key); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw UsageError("unknown setting '" + key + "'");
  it->second(trim(value));
  if (s.quad.nodes < 8) throw UsageError("nodes must be at least 8");
  s.minneg.probe_points = s.probe_points;
}

void apply_config_file(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    apply_setting(s, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

std::vector<double> GammaRange::values() const {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

GammaRange parse_gamma_range(const std::string& text) {
  const auto parts = split_on(text, ':');
  if (parts.size() != 3) throw UsageError("gamma range must be start:stop:step");
  GammaRange r{parse_number(parts[0], "gamma start"), parse_number(parts[1], "gamma stop"),
               parse_number(parts[2], "gamma step")};
  if (!(r.step > 0.0)) throw UsageError("gamma step must be positive");
  if (r.start > r.stop) throw UsageError("gamma start must not exceed stop");
  if (r.start < 0.0) throw UsageError("gamma must be nonnegative");
  if ((r.stop - r.start) / r.step > 1e6) throw UsageError("gamma range has too many points");
  return r;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(points == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (points - 1));
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split_on(text, ':');
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:n");
  GridSpec g{parse_number(parts[0], "grid lo"), parse_number(parts[1], "grid hi"), parse_int(parts[2], "grid points")};
  if (!(g.lo < g.hi)) throw UsageError("grid needs lo < hi");
  if (g.points < 1) throw UsageError("grid needs at least one point");
  if (g.points > 4001) throw UsageError("grid has too many points per axis");
  return g;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto& item : split_on(text, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace phasecorr::cli
