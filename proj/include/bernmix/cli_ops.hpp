#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernmix/fit.hpp"

namespace bernmix::cli {

// Process exit codes: 0 ok, 2 I/O, 3 parse, 4 numeric/infeasible.
enum ExitCode : int { exit_ok = 0, exit_io = 2, exit_parse = 3, exit_infeasible = 4 };

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

// CSV input: UTF-8, one float per line, '#' comments and blank lines
// ignored.  I/O failures exit 2, malformed numerics exit 3 with the
// offending line number.
std::vector<double> read_csv(const std::string& path);

struct FitRequest {
  std::string input;
  bool support_auto = true;  // auto -> data_range rule
  double support_a = 0.0;
  double support_b = 1.0;
  bool degree_auto = true;
  int degree = 0;
  std::optional<int> m0;  // grid override when degree is auto
  std::optional<int> k;
  std::optional<double> f0;
  std::optional<double> f1;
  bool symmetric = false;
  double tol = 1e-7;
  int max_iter = 500;
  fit::InitScheme init = fit::InitScheme::uniform;
};

nlohmann::json run_fit(const FitRequest& req);

// Evaluates a fit document on an equally spaced grid; returns CSV rows
// (x, pdf, cdf).  Malformed model JSON exits 3.
std::string run_eval(const nlohmann::json& model, double from, double to, int points);

struct SelectRequest {
  std::string input;
  bool support_auto = true;
  double support_a = 0.0;
  double support_b = 1.0;
  std::optional<int> m0;
  std::optional<int> k;
  double tol = 1e-7;
  int max_iter = 500;
};

nlohmann::json run_select_degree(const SelectRequest& req);

struct SimulateRequest {
  std::string dist;
  int n = 100;
  int runs = 10;
  std::uint64_t seed = 1;
  bool strict = false;
  int grid_points = 200;
  int threads = 0;
};

// Runs the Monte Carlo study; also renders the one-line summary table
// into *table when given.  --strict maps any failed run to exit 4.
nlohmann::json run_simulate(const SimulateRequest& req, std::string* table = nullptr);

// Pointwise-MSE grids of a simulate report as CSV for external plotting.
std::string simulate_pointwise_csv(const nlohmann::json& report);

// Serializes with a trailing newline to the path, or stdout when empty.
void write_text(const std::string& text, const std::string& out_path);
void write_json(const nlohmann::json& doc, const std::string& out_path);

}  // namespace bernmix::cli
