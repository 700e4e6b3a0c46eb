#pragma once

// Settings shared by every subcommand: config-file parsing and the small
// range grammars used on the command line.

#include <stdexcept>
#include <string>
#include <vector>

#include "phasecorr/min_negativity.hpp"
#include "phasecorr/phase_space.hpp"

namespace phasecorr::cli {

/// Bad flags, malformed ranges or config lines; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  QuadratureSpec quad;
  LogBase log_base = LogBase::Two;     // mutual information, classical correlation, discord
  LogBase ng_log_base = LogBase::E;    // non-Gaussianity
  int probe_points = 61;  // marginal positivity probe grid per axis
  MinNegativitySearch minneg;
};

/// Apply one `key = value` setting. Throws UsageError for unknown keys or bad values.
void apply_setting(Settings& s, const std::string& key, const std::string& value);

/// Read `key = value` lines; blank lines and lines starting with '#' are skipped.
void apply_config_file(Settings& s, const std::string& path);

/// start:stop:step with start <= stop and step > 0; values start + i * step.
struct GammaRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

GammaRange parse_gamma_range(const std::string& text);

/// lo:hi:n with lo < hi and n >= 1 points (inclusive endpoints).
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;

  std::vector<double> values() const;
};

GridSpec parse_grid(const std::string& text);

/// Comma-separated list with empty items removed.
std::vector<std::string> split_list(const std::string& text);

/// Strict double parse (whole string must be consumed).
double parse_number(const std::string& text, const std::string& what);

}  // namespace phasecorr::cli
