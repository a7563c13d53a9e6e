#pragma once

// Config-driven refinement studies and their CSV output.

#include "c0wave/adaptive.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace c0wave {

enum class Suite { tau_refine, p_refine, spacetime_refine, long_time, effectivity, adaptive };

[[nodiscard]] Suite parse_suite(const std::string& name);
[[nodiscard]] std::string suite_name(Suite s);

/// Spatial degree per run: a fixed list, or the time degree plus an offset.
struct DegreeRule {
  std::vector<int> values{2};
  bool follows_pt = false;
  int offset = 0;
};

/// Mesh width per run: a fixed list, or a multiple of the time step.
struct WidthRule {
  std::vector<double> values{0.4};
  bool follows_tau = false;
  double factor = 1.0;
};

struct ExperimentConfig {
  CaseId case_id = CaseId::case1;
  CaseParams params;
  Suite suite = Suite::tau_refine;
  std::vector<double> tau{0.2};
  std::vector<int> pt{2};
  DegreeRule px;
  WidthRule h;
  std::vector<double> T{1.0};
  double theta = 0.5;
  int max_iters = 25;
  double eta_tol = 0.0;
  bool include_osc = false;
  std::string output = "results.csv";
  std::uint64_t seed = 0;
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> violations);
  [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  std::vector<std::string> violations_;
};

/// Parses a flat `key = value` document; `#` starts a comment, lists are
/// comma separated. Required keys: case, suite. Throws ConfigError listing
/// every violation found.
[[nodiscard]] ExperimentConfig parse_config(const std::string& text);

/// Re-checks a config assembled in code. Throws ConfigError.
void validate_config(const ExperimentConfig& config);

/// Number of uniform intervals of length close to tau on (0, T); throws
/// std::invalid_argument when T/tau is more than 5% away from an integer.
[[nodiscard]] int intervals_for(double T, double tau);

struct ResultRow {
  std::string suite;
  std::string run;  // uniform or adaptive
  int group = 0;
  int level = 0;
  double T = 0.0;
  double h = 0.0;
  double tau = 0.0;  // largest step of the grid
  int px = 0;
  int pt = 0;
  int N = 0;
  long long dofs = 0;
  ErrorBundle err;
  double eta = 0.0;            // m = N
  double eta_localized = 0.0;  // m from the largest jump term
  double eta1 = 0.0;
  double eta2 = 0.0;
  double osc = 0.0;
  double kappa = 0.0;  // (eta, plus osc when requested) / Linf_L2 error
  double stability_lhs = 0.0;
  double stability_rhs = 0.0;
  int stable = 0;
  double rate_W1inf_L2 = 0.0;
  double rate_Linf_H1 = 0.0;
  double rate_L2_H1 = 0.0;
  double rate_H1deriv_L2L2 = 0.0;
  double rate_Linf_L2 = 0.0;
  double rate_jump = 0.0;
  double rate_eta = 0.0;
  std::string status = "ok";
  double wall_time = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;

  [[nodiscard]] bool all_ok() const;
};

/// Column names of the CSV output, in order.
[[nodiscard]] const std::vector<std::string>& csv_columns();

/// Runs every level of the configured suite. Levels of uniform runs are
/// spread over C0WAVE_THREADS worker threads (default: hardware threads).
/// A failing level is recorded in its status and the suite continues.
[[nodiscard]] ExperimentResult run_suite(const ExperimentConfig& config);

/// Fills the rate columns: rows of the same suite, run and group are compared
/// with their predecessor against tau (T for long_time, pt for p_refine,
/// DoFs for adaptive runs). The first row of a group gets NaN.
void fill_rates(ExperimentResult& result);

/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const ExperimentResult& result, const std::string& path);
[[nodiscard]] ExperimentResult read_csv(const std::string& path);

/// Worker count from C0WAVE_THREADS, falling back to the hardware count.
[[nodiscard]] int thread_count();

}  // namespace c0wave
