#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace phasecorr;
using namespace phasecorr::cli;

constexpr int kUsageExit = 2;
constexpr int kNonConvergedExit = 3;

struct Common {
  std::string config;
  int threads = 0;  // 0 keeps the config or default value
  bool strict = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "key = value settings file (flags override it)");
  cmd->add_option("--threads", c.threads, "worker threads for the negativity quadrature");
  cmd->add_flag("--strict", c.strict, "exit 3 when a negativity volume misses its tolerance");
}

Settings load_settings(const Common& c) {
  Settings s;
  if (!c.config.empty()) apply_config_file(s, c.config);
  if (c.threads < 0) throw UsageError("--threads must be positive");
  if (c.threads > 0) s.quad.threads = c.threads;
  return s;
}

// Writes to the named file, or stdout for "" and "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<StateId> parse_states(const std::string& text) {
  std::vector<StateId> out;
  for (const auto& token : split_list(text)) out.push_back(parse_state_token(token));
  if (out.empty()) throw UsageError("state list is empty");
  return out;
}

int finish(const Table& table, const std::string& out_path, bool strict) {
  Sink sink(out_path);
  write_csv(sink.stream(), table.header, table.rows);
  if (!table.converged) {
    std::cerr << "warning: negativity quadrature did not converge for every entry\n";
    if (strict) return kNonConvergedExit;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space and quantum-correlation measures of two-mode cat mixtures"};
  app.require_subcommand(1);

  Common common;
  std::string states = "pp,pm", quantities = "neg", gamma_text, grid_text = "-4:4:81", out_path, svg_path, state_text,
              at_text = "0,0";
  double gamma = 1.0;

  auto* sweep = app.add_subcommand("sweep", "tabulate measures over a gamma range");
  sweep->add_option("--states", states, "comma-separated: pp,pm,q_pp,q_pm,c_pp,c_pm")->capture_default_str();
  sweep->add_option("--quantities", quantities, "neg,ng,q_mandel,q_su2,d,discord,lqu,dg,i,j,rank,tdet or all")
      ->capture_default_str();
  sweep->add_option("--gamma", gamma_text, "start:stop:step")->required();
  sweep->add_option("--out", out_path, "CSV path (stdout if omitted)");
  sweep->add_option("--svg", svg_path, "optional line plot of every column");
  add_common(sweep, common);

  auto* wig = app.add_subcommand("wigner", "dump a Wigner surface on a grid");
  wig->add_option("--state", state_text, "state token or name (marginal, even_cat, odd_cat, pp, ...)")->required();
  wig->add_option("--gamma", gamma, "cat amplitude")->capture_default_str();
  wig->add_option("--grid", grid_text, "lo:hi:n per axis")->capture_default_str();
  wig->add_option("--at", at_text, "x,y of the fixed second-mode point for two-mode states")->capture_default_str();
  wig->add_option("--out", out_path, "CSV path (stdout if omitted)");
  wig->add_option("--svg", svg_path, "optional heat map");
  add_common(wig, common);

  auto* report = app.add_subcommand("report", "every measure for the six two-mode states");
  report->add_option("--gamma", gamma, "cat amplitude (0 selects the Fock limit)")->required();
  add_common(report, common);

  auto* minneg = app.add_subcommand("minneg", "negativity minimized over local cat-space unitaries");
  minneg->add_option("--states", states, "comma-separated state tokens")->capture_default_str();
  minneg->add_option("--gamma", gamma, "cat amplitude")->required();
  minneg->add_option("--out", out_path, "CSV path (stdout if omitted)");
  add_common(minneg, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    const Settings settings = load_settings(common);

    if (*sweep) {
      const auto gammas = parse_gamma_range(gamma_text).values();
      std::vector<std::vector<double>> numeric;
      const Table table = run_sweep(parse_states(states), parse_quantities(split_list(quantities)), gammas, settings,
                                    svg_path.empty() ? nullptr : &numeric);
      if (!svg_path.empty()) {
        std::vector<Series> series;
        for (std::size_t c = 2; c < numeric.front().size(); ++c) {
          Series s{table.header[c], {}};
          for (const auto& row : numeric) s.values.push_back(row[c]);
          series.push_back(std::move(s));
        }
        Sink svg(svg_path);
        write_line_plot(svg.stream(), "sweep", "|gamma|", gammas, series);
      }
      return finish(table, out_path, common.strict);
    }

    if (*wig) {
      const auto at = split_list(at_text);
      if (at.size() != 2) throw UsageError("--at expects x,y");
      WignerRequest request{parse_state_token(state_text), gamma, parse_grid(grid_text), parse_number(at[0], "--at x"),
                            parse_number(at[1], "--at y")};
      std::vector<std::vector<double>> surface;
      const Table table = run_wigner(request, svg_path.empty() ? nullptr : &surface);
      if (!svg_path.empty()) {
        Sink svg(svg_path);
        const auto axis = request.grid.values();
        write_heatmap(svg.stream(), "W " + state_text, axis, axis, surface);
      }
      return finish(table, out_path, false);
    }

    if (*report) {
      bool converged = true;
      run_report(gamma, settings, std::cout, converged);
      return !converged && common.strict ? kNonConvergedExit : 0;
    }

    if (*minneg) return finish(run_minneg(parse_states(states), gamma, settings), out_path, common.strict);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const DegenerateCatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
