#include "bernmix/cli_ops.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bernmix/degree.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/model.hpp"
#include "bernmix/simulate.hpp"
#include "bernmix/transform.hpp"

namespace bernmix::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// shortest exact decimal for CSV cells
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

transform::SupportMap resolve_support(std::span<const double> data, bool support_auto,
                                      double a, double b) {
  const auto spec = support_auto ? transform::SupportSpec::data_range()
                                 : transform::SupportSpec::known(a, b);
  return transform::choose_support(data, spec);
}

fit::FitConfig make_config(double tol, int max_iter, std::optional<double> f0,
                           std::optional<double> f1, bool symmetric, fit::InitScheme init) {
  fit::FitConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.boundary_f0 = f0;
  cfg.boundary_f1 = f1;
  cfg.symmetric = symmetric;
  cfg.init = init;
  return cfg;
}

}  // namespace

std::vector<double> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(exit_io, "cannot open input file: " + path);
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string tok = trim(line);
    if (tok.empty() || tok[0] == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw CliError(exit_parse,
                     "parse error at line " + std::to_string(lineno) + ": '" + tok + "'");
    }
    out.push_back(v);
  }
  if (in.bad()) throw CliError(exit_io, "read error: " + path);
  if (out.empty()) throw CliError(exit_parse, "no data values in " + path);
  return out;
}

json run_fit(const FitRequest& req) {
  const std::vector<double> data = read_csv(req.input);
  const transform::SupportMap map =
      resolve_support(data, req.support_auto, req.support_a, req.support_b);
  const std::vector<double> unit = transform::to_unit(map, data);
  const fit::FitConfig cfg =
      make_config(req.tol, req.max_iter, req.f0, req.f1, req.symmetric, req.init);

  json doc;
  doc["version"] = 1;
  doc["n"] = data.size();
  doc["support"] = {{"a", map.a}, {"b", map.b}};

  fit::FitResult best = [&] {
    if (!req.degree_auto) {
      json deg;
      deg["mode"] = "fixed";
      deg["m_hat"] = req.degree;
      doc["degree"] = deg;
      return fit::em_fit(unit, req.degree, cfg);
    }
    if (req.m0.has_value() != req.k.has_value())
      throw CliError(exit_parse, "--m0 and --k must be given together");
    std::optional<degree::DegreeGrid> grid;
    if (req.m0 && req.k) grid = degree::DegreeGrid{*req.m0, *req.k};
    const degree::SelectedFit sf = degree::select_and_fit(unit, cfg, grid);
    json deg;
    deg["mode"] = "auto";
    deg["m_hat"] = sf.selection.m_hat;
    deg["grid"] = sf.selection.grid.degrees();
    deg["profile_loglik"] = sf.selection.profile;
    deg["R"] = sf.selection.R;
    deg["tau_hat"] = sf.selection.tau_hat;
    deg["m_b"] = sf.m_b;
    doc["degree"] = deg;
    return fit::FitResult{sf.best.weights, sf.best.loglik, sf.best.n_iter, sf.best.converged};
  }();

  const model::BernsteinModel bm{best.weights, map, best.loglik, best.n_iter, best.converged};
  doc["weights"] = std::vector<double>(best.weights.values().begin(), best.weights.values().end());
  doc["loglik"] = best.loglik;
  doc["n_iter"] = best.n_iter;
  doc["converged"] = best.converged;
  doc["mean_estimate"] = model::mean_estimate(bm);
  return doc;
}

std::string run_eval(const json& model, double from, double to, int points) {
  if (points < 1) throw CliError(exit_parse, "eval: points must be >= 1");
  std::vector<double> w;
  double a = 0.0, b = 1.0;
  try {
    w = model.at("weights").get<std::vector<double>>();
    a = model.at("support").at("a").get<double>();
    b = model.at("support").at("b").get<double>();
  } catch (const json::exception& e) {
    throw CliError(exit_parse, std::string("malformed model JSON: ") + e.what());
  }
  if (w.empty() || !(b > a)) throw CliError(exit_parse, "malformed model JSON: bad fields");

  model::BernsteinModel bm{MixtureWeights(std::move(w)), {a, b}, 0.0, 1, true};
  std::ostringstream out;
  out << "x,pdf,cdf\n";
  for (int i = 0; i < points; ++i) {
    const double x = points == 1 ? from : from + (to - from) * i / (points - 1.0);
    out << fmt(x) << ',' << fmt(model::pdf(bm, x)) << ',' << fmt(model::cdf(bm, x)) << '\n';
  }
  return out.str();
}

json run_select_degree(const SelectRequest& req) {
  const std::vector<double> data = read_csv(req.input);
  const transform::SupportMap map =
      resolve_support(data, req.support_auto, req.support_a, req.support_b);
  const std::vector<double> unit = transform::to_unit(map, data);
  const fit::FitConfig cfg = make_config(req.tol, req.max_iter, std::nullopt, std::nullopt,
                                         false, fit::InitScheme::uniform);

  if (req.m0.has_value() != req.k.has_value())
    throw CliError(exit_parse, "--m0 and --k must be given together");
  std::optional<degree::DegreeGrid> grid;
  if (req.m0 && req.k) grid = degree::DegreeGrid{*req.m0, *req.k};
  const degree::SelectedFit sf = degree::select_and_fit(unit, cfg, grid);

  json doc;
  doc["version"] = 1;
  doc["n"] = data.size();
  doc["support"] = {{"a", map.a}, {"b", map.b}};
  doc["m_b"] = sf.m_b;
  doc["grid"] = sf.selection.grid.degrees();
  doc["profile"] = sf.selection.profile;
  doc["increments"] = sf.selection.increments;
  doc["R"] = sf.selection.R;
  doc["tau_hat"] = sf.selection.tau_hat;
  doc["m_hat"] = sf.selection.m_hat;
  doc["flat_profile"] = sf.selection.flat_profile;
  return doc;
}

json run_simulate(const SimulateRequest& req, std::string* table) {
  simulate::TestDistribution d = [&] {
    try {
      return simulate::preset(req.dist);
    } catch (const std::domain_error& e) {
      throw CliError(exit_parse, e.what());
    }
  }();

  simulate::StudyConfig cfg;
  cfg.grid_points = req.grid_points;
  cfg.threads = req.threads;
  const simulate::SimReport rep = simulate::run_study(d, req.n, req.runs, req.seed, cfg);
  if (req.strict && rep.failed_runs > 0) {
    throw CliError(exit_infeasible,
                   std::to_string(rep.failed_runs) + " run(s) failed under --strict");
  }

  json doc;
  doc["version"] = 1;
  doc["distribution"] = rep.distribution;
  doc["n"] = rep.n;
  doc["runs"] = rep.runs;
  doc["seed"] = rep.seed;
  doc["failed_runs"] = rep.failed_runs;
  doc["mean_mhat"] = rep.mean_mhat;
  doc["var_mhat"] = rep.var_mhat;
  doc["mise100_fP"] = rep.mise100_fP;
  doc["mise100_fB"] = rep.mise100_fB;
  doc["mise100_fK"] = rep.mise100_fK;
  doc["mse100_muP"] = rep.mse100_muP;
  doc["mse100_muB"] = rep.mse100_muB;
  doc["mse100_xbar"] = rep.mse100_xbar;
  doc["grid"] = {{"x", rep.grid_x},
                 {"mse_pdf_B", rep.mse_pdf_B},
                 {"mse_pdf_P", rep.mse_pdf_P},
                 {"mse_pdf_K", rep.mse_pdf_K},
                 {"mse_cdf_B", rep.mse_cdf_B},
                 {"mse_cdf_P", rep.mse_cdf_P},
                 {"mse_cdf_E", rep.mse_cdf_E}};

  if (table) {
    std::ostringstream t;
    t << "dist=" << rep.distribution << " n=" << rep.n << " runs=" << rep.runs
      << " failed=" << rep.failed_runs << '\n';
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-12s %10s %14s %14s %14s %14s %14s %14s\n", "E(m^)",
                  "Var(m^)", "100MISE(f_P)", "100MISE(f_B)", "100MISE(f_K)", "100MSE(mu_P)",
                  "100MSE(mu_B)", "100MSE(xbar)");
    t << buf;
    std::snprintf(buf, sizeof(buf),
                  "%-12.4f %10.4f %14.4f %14.4f %14.4f %14.4f %14.4f %14.4f\n", rep.mean_mhat,
                  rep.var_mhat, rep.mise100_fP, rep.mise100_fB, rep.mise100_fK, rep.mse100_muP,
                  rep.mse100_muB, rep.mse100_xbar);
    t << buf;
    *table = t.str();
  }
  return doc;
}

std::string simulate_pointwise_csv(const json& report) {
  const auto& g = report.at("grid");
  const auto x = g.at("x").get<std::vector<double>>();
  const char* cols[] = {"mse_pdf_B", "mse_pdf_P", "mse_pdf_K",
                        "mse_cdf_B", "mse_cdf_P", "mse_cdf_E"};
  std::ostringstream out;
  out << "x";
  for (const char* c : cols) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << fmt(x[i]);
    for (const char* c : cols) out << ',' << fmt(g.at(c).at(i).get<double>());
    out << '\n';
  }
  return out.str();
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw CliError(exit_io, "cannot open output file: " + out_path);
  out << text;
  if (!out) throw CliError(exit_io, "write error: " + out_path);
}

void write_json(const json& doc, const std::string& out_path) {
  write_text(doc.dump(2) + "\n", out_path);
}

}  // namespace bernmix::cli
