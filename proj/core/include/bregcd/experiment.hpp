#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bregcd/problem.hpp"
#include "bregcd/solvers.hpp"

namespace bregcd {

/// A sweep over (solver, gamma, seed) triples on synthetic (or file-loaded)
/// instances, one CSV per run plus a cross-run summary.
struct ExperimentConfig {
  Family family = Family::PoissonInverse;
  int m = 500;
  int n = 500;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<SolverKind> solvers = {SolverKind::Rbcd};
  std::vector<double> gammas = {2.0};  // applied to accelerated solvers only
  int epochs = 100;
  std::string out_dir = ".";
  std::string instance_path;  // when set, the same instance is used for every seed
  BetaSchedule beta_schedule = BetaSchedule::ClosedForm;
  BlockSelection selection = BlockSelection::ShuffledSweep;  // figure protocol
  bool include_timing = true;

  void validate() const;  // throws UsageError
};

struct RunSummaryRow {
  SolverKind solver;
  double gamma = 0.0;  // NaN for non-accelerated solvers
  int seeds = 0;
  int diverged = 0;
  double median_final_objective = 0.0;
};

/// "1..10" (inclusive range) or "3,7,19".
std::vector<std::uint64_t> expand_seed_spec(const std::string& spec);

/// Fully-resolved one-line-per-field echo of the configuration.
std::string echo_config(const ExperimentConfig& config);

/// CSV file name of one run inside config.out_dir.
std::string trace_file_name(const ExperimentConfig& config, SolverKind solver, double gamma,
                            std::uint64_t seed);

/// Runs the sweep.  Diverged runs are flagged in their trace and counted in
/// the summary; they never abort the sweep.  Writes one CSV per run and
/// summary.csv; returns the summary rows.
std::vector<RunSummaryRow> run_experiment(const ExperimentConfig& config);

}  // namespace bregcd
