// bernmix command-line tool: fit / eval / select-degree / simulate,
// CSV in, JSON out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bernmix/cli_ops.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/simulate.hpp"

namespace {

using bernmix::cli::CliError;

// --support "a,b" | "auto"
void parse_support(const std::string& s, bool& is_auto, double& a, double& b) {
  if (s == "auto") {
    is_auto = true;
    return;
  }
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--support", "expected 'a,b' or 'auto'");
  }
  try {
    a = std::stod(s.substr(0, comma));
    b = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--support", "expected numeric bounds 'a,b'");
  }
  is_auto = false;
}

void parse_degree(const std::string& s, bool& is_auto, int& value) {
  if (s == "auto") {
    is_auto = true;
    return;
  }
  try {
    value = std::stoi(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--degree", "expected an integer or 'auto'");
  }
  is_auto = false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein polynomial (beta mixture) density estimation"};
  app.require_subcommand(1);

  // ---- fit ----
  auto* fit_cmd = app.add_subcommand("fit", "fit a Bernstein density to CSV data");
  std::string fit_input, fit_support = "auto", fit_degree = "auto", fit_out;
  std::optional<int> fit_m0, fit_k;
  std::optional<double> fit_f0, fit_f1;
  bool fit_symmetric = false;
  double fit_tol = 1e-7;
  int fit_max_iter = 500;
  fit_cmd->add_option("input", fit_input, "CSV input, one value per line")->required();
  fit_cmd->add_option("--support", fit_support, "support 'a,b' or 'auto'");
  fit_cmd->add_option("--degree", fit_degree, "fixed degree or 'auto'");
  fit_cmd->add_option("--m0", fit_m0, "degree grid start (with --degree auto)");
  fit_cmd->add_option("--k", fit_k, "degree grid increments (with --degree auto)");
  fit_cmd->add_option("--f0", fit_f0, "known density value at the left boundary");
  fit_cmd->add_option("--f1", fit_f1, "known density value at the right boundary");
  fit_cmd->add_flag("--symmetric", fit_symmetric, "enforce symmetry about the midpoint");
  fit_cmd->add_option("--tol", fit_tol, "EM relative log-likelihood tolerance");
  fit_cmd->add_option("--max-iter", fit_max_iter, "EM iteration cap");
  fit_cmd->add_option("--out", fit_out, "output path (default stdout)");
  fit_cmd->callback([&] {
    bernmix::cli::FitRequest req;
    req.input = fit_input;
    parse_support(fit_support, req.support_auto, req.support_a, req.support_b);
    parse_degree(fit_degree, req.degree_auto, req.degree);
    req.m0 = fit_m0;
    req.k = fit_k;
    req.f0 = fit_f0;
    req.f1 = fit_f1;
    req.symmetric = fit_symmetric;
    req.tol = fit_tol;
    req.max_iter = fit_max_iter;
    bernmix::cli::write_json(bernmix::cli::run_fit(req), fit_out);
  });

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a fit JSON on a grid, CSV out");
  std::string eval_model, eval_out;
  double eval_from = 0.0, eval_to = 1.0;
  int eval_points = 101;
  eval_cmd->add_option("model", eval_model, "fit JSON produced by 'fit'")->required();
  eval_cmd->add_option("--from", eval_from, "grid start")->required();
  eval_cmd->add_option("--to", eval_to, "grid end")->required();
  eval_cmd->add_option("--points", eval_points, "number of grid points");
  eval_cmd->add_option("--out", eval_out, "output path (default stdout)");
  eval_cmd->callback([&] {
    std::ifstream in(eval_model);
    if (!in) throw CliError(bernmix::cli::exit_io, "cannot open model file: " + eval_model);
    nlohmann::json model;
    try {
      in >> model;
    } catch (const nlohmann::json::exception& e) {
      throw CliError(bernmix::cli::exit_parse, std::string("malformed model JSON: ") + e.what());
    }
    bernmix::cli::write_text(bernmix::cli::run_eval(model, eval_from, eval_to, eval_points),
                             eval_out);
  });

  // ---- select-degree ----
  auto* sel_cmd = app.add_subcommand("select-degree", "change-point degree selection diagnostics");
  std::string sel_input, sel_support = "auto", sel_out;
  std::optional<int> sel_m0, sel_k;
  double sel_tol = 1e-7;
  int sel_max_iter = 500;
  sel_cmd->add_option("input", sel_input, "CSV input, one value per line")->required();
  sel_cmd->add_option("--support", sel_support, "support 'a,b' or 'auto'");
  sel_cmd->add_option("--m0", sel_m0, "degree grid start");
  sel_cmd->add_option("--k", sel_k, "degree grid increments");
  sel_cmd->add_option("--tol", sel_tol, "EM relative log-likelihood tolerance");
  sel_cmd->add_option("--max-iter", sel_max_iter, "EM iteration cap");
  sel_cmd->add_option("--out", sel_out, "output path (default stdout)");
  sel_cmd->callback([&] {
    bernmix::cli::SelectRequest req;
    req.input = sel_input;
    parse_support(sel_support, req.support_auto, req.support_a, req.support_b);
    req.m0 = sel_m0;
    req.k = sel_k;
    req.tol = sel_tol;
    req.max_iter = sel_max_iter;
    bernmix::cli::write_json(bernmix::cli::run_select_degree(req), sel_out);
  });

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study for a test distribution");
  std::string sim_dist, sim_out, sim_pointwise;
  int sim_n = 100, sim_runs = 10, sim_grid = 200, sim_threads = 0;
  std::uint64_t sim_seed = 1;
  bool sim_strict = false, sim_list = false;
  sim_cmd->add_option("--dist", sim_dist, "preset, e.g. B(5,7), G(2,2), N(0,1), NN(4)");
  sim_cmd->add_option("--n", sim_n, "sample size per run");
  sim_cmd->add_option("--runs", sim_runs, "Monte Carlo replications");
  sim_cmd->add_option("--seed", sim_seed, "substream base seed");
  sim_cmd->add_option("--grid-points", sim_grid, "error-grid resolution");
  sim_cmd->add_option("--threads", sim_threads, "worker threads (0 = auto)");
  sim_cmd->add_flag("--strict", sim_strict, "fail (exit 4) if any run fails");
  sim_cmd->add_flag("--list", sim_list, "list the available presets and exit");
  sim_cmd->add_option("--out", sim_out, "report path (default stdout)");
  sim_cmd->add_option("--pointwise-csv", sim_pointwise, "also write pointwise-MSE grids as CSV");
  sim_cmd->callback([&] {
    if (sim_list) {
      for (const auto& name : bernmix::simulate::preset_names()) std::cout << name << '\n';
      return;
    }
    if (sim_dist.empty()) {
      throw CliError(bernmix::cli::exit_parse, "simulate: --dist is required (or use --list)");
    }
    bernmix::cli::SimulateRequest req;
    req.dist = sim_dist;
    req.n = sim_n;
    req.runs = sim_runs;
    req.seed = sim_seed;
    req.strict = sim_strict;
    req.grid_points = sim_grid;
    req.threads = sim_threads;
    std::string table;
    const nlohmann::json rep = bernmix::cli::run_simulate(req, &table);
    if (!sim_out.empty()) {
      bernmix::cli::write_json(rep, sim_out);
      std::cout << table;
    } else {
      bernmix::cli::write_json(rep, "");
      std::cerr << table;
    }
    if (!sim_pointwise.empty()) {
      bernmix::cli::write_text(bernmix::cli::simulate_pointwise_csv(rep), sim_pointwise);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    // domain / infeasible / numeric problems from the library
    std::cerr << "error: " << e.what() << '\n';
    return bernmix::cli::exit_infeasible;
  }
  return 0;
}
