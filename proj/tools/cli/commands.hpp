#pragma once

// Subcommand bodies, separated from argument parsing so they can be tested.

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/options.hpp"
#include "cli/output.hpp"
#include "phasecorr/catalog.hpp"

namespace phasecorr::cli {

/// Short state tokens used on the command line and in column names:
/// pp, pm, q_pp, q_pm, c_pp, c_pm (full catalog names are accepted too).
StateId parse_state_token(const std::string& token);
std::string state_token(StateId id);

enum class Quantity { neg, ng, q_mandel, q_su2, squeezing, discord, lqu, dg, mi, j, rank, tdet };

/// Names: neg ng q_mandel q_su2 d discord lqu dg i j rank tdet, or all.
/// Output follows this documented order regardless of input order.
std::vector<Quantity> parse_quantities(const std::vector<std::string>& names);

struct Table {
  Row header;
  std::vector<Row> rows;
  bool converged = true;  // every negativity volume met the quadrature tolerance
};

/// One row per gamma: gamma, Gamma, then quantity-major, state-minor columns,
/// then one boolean `neg_<state>_converged` column per state when neg is requested.
Table run_sweep(const std::vector<StateId>& states, const std::vector<Quantity>& quantities,
                const std::vector<double>& gammas, const Settings& settings, std::vector<std::vector<double>>* numeric = nullptr);

struct WignerRequest {
  StateId state;
  double gamma;
  GridSpec grid;
  double fixed_x = 0.0;  // second-mode phase point for two-mode slices
  double fixed_y = 0.0;
};

/// Rows x, y, W (single mode) or x1, y1, x2, y2, W with mode 2 fixed.
/// Coordinates are z = x + i y; W integrates to one over dx dy.
Table run_wigner(const WignerRequest& request, std::vector<std::vector<double>>* surface = nullptr);

/// Human-readable table of every measure for the six two-mode states.
void run_report(double gamma, const Settings& settings, std::ostream& out, bool& converged);

Table run_minneg(const std::vector<StateId>& states, double gamma, const Settings& settings);

}  // namespace phasecorr::cli
