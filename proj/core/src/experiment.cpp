#include "bregcd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bregcd/errors.hpp"
#include "bregcd/instance_io.hpp"
#include "bregcd/trace.hpp"

namespace bregcd {

namespace {

bool is_accelerated(SolverKind kind) {
  return kind == SolverKind::Arbcd || kind == SolverKind::ArbcdEfficient ||
         kind == SolverKind::Abpg;
}

std::string gamma_tag(double gamma) {
  std::ostringstream ss;
  ss << gamma;
  return ss.str();
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (solvers.empty()) throw UsageError("experiment: at least one solver required");
  if (seeds.empty()) throw UsageError("experiment: at least one seed required");
  if (m < 1 || n < 1) throw UsageError("experiment: M, N >= 1 required");
  if (epochs < 1) throw UsageError("experiment: epochs >= 1 required");
  bool any_accel = false;
  for (SolverKind s : solvers) any_accel = any_accel || is_accelerated(s);
  if (any_accel) {
    if (gammas.empty()) throw UsageError("experiment: accelerated solvers need a gamma list");
    for (double g : gammas) {
      if (!(g > 0.0)) throw UsageError("experiment: gamma values must be positive");
    }
  }
}

std::vector<std::uint64_t> expand_seed_spec(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::size_t dots = spec.find("..");
  if (dots != std::string::npos) {
    std::uint64_t lo = 0, hi = 0;
    try {
      lo = std::stoull(spec.substr(0, dots));
      hi = std::stoull(spec.substr(dots + 2));
    } catch (const std::exception&) {
      throw UsageError("bad seed range '" + spec + "'");
    }
    if (hi < lo) throw UsageError("bad seed range '" + spec + "' (end before start)");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      seeds.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw UsageError("bad seed '" + item + "'");
    }
  }
  if (seeds.empty()) throw UsageError("empty seed list '" + spec + "'");
  return seeds;
}

std::string echo_config(const ExperimentConfig& config) {
  std::ostringstream ss;
  ss << "family=" << family_name(config.family) << '\n';
  ss << "m=" << config.m << '\n' << "n=" << config.n << '\n';
  ss << "epochs=" << config.epochs << '\n';
  ss << "solvers=";
  for (std::size_t i = 0; i < config.solvers.size(); ++i) {
    if (i) ss << ',';
    ss << solver_name(config.solvers[i]);
  }
  ss << '\n' << "gammas=";
  for (std::size_t i = 0; i < config.gammas.size(); ++i) {
    if (i) ss << ',';
    ss << config.gammas[i];
  }
  ss << '\n' << "seeds=";
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    if (i) ss << ',';
    ss << config.seeds[i];
  }
  ss << '\n';
  ss << "beta_schedule="
     << (config.beta_schedule == BetaSchedule::ClosedForm ? "closed" : "equality") << '\n';
  ss << "selection="
     << (config.selection == BlockSelection::UniformRandom ? "uniform" : "sweep") << '\n';
  ss << "out_dir=" << config.out_dir << '\n';
  if (!config.instance_path.empty()) ss << "instance=" << config.instance_path << '\n';
  ss << "timing=" << (config.include_timing ? "on" : "off") << '\n';
  ss << "start=all-ones" << '\n';
  return ss.str();
}

std::string trace_file_name(const ExperimentConfig& config, SolverKind solver, double gamma,
                            std::uint64_t seed) {
  std::ostringstream ss;
  ss << family_name(config.family) << '_' << solver_name(solver);
  if (is_accelerated(solver)) ss << "_gamma" << gamma_tag(gamma);
  ss << "_seed" << seed << ".csv";
  return (std::filesystem::path(config.out_dir) / ss.str()).string();
}

std::vector<RunSummaryRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  std::vector<RunSummaryRow> summary;
  for (SolverKind solver : config.solvers) {
    std::vector<double> gammas =
        is_accelerated(solver) ? config.gammas : std::vector<double>{std::nan("")};
    for (double gamma : gammas) {
      RunSummaryRow row;
      row.solver = solver;
      row.gamma = gamma;
      std::vector<double> finals;
      for (std::uint64_t seed : config.seeds) {
        ProblemInstance p =
            config.instance_path.empty()
                ? synth_instance(config.family, config.m, config.n, seed)
                : load_instance(config.family, config.instance_path);
        SolverConfig sc;
        sc.solver = solver;
        sc.epochs = config.epochs;
        sc.seed = seed;
        sc.gamma = is_accelerated(solver) ? gamma : 2.0;
        sc.beta_schedule = config.beta_schedule;
        sc.selection = config.selection;
        SolverTrace trace = run_solver(p, sc);
        write_trace_csv(trace, trace_file_name(config, solver, gamma, seed),
                        config.include_timing);
        ++row.seeds;
        if (trace.diverged) {
          ++row.diverged;
        } else {
          finals.push_back(trace.final_objective());
        }
      }
      row.median_final_objective = median(finals);
      summary.push_back(row);
    }
  }

  std::ofstream out(std::filesystem::path(config.out_dir) / "summary.csv");
  if (!out) throw IoError("cannot write summary.csv in " + config.out_dir);
  out << "family,solver,gamma,seeds,diverged,median_final_objective\n";
  char buf[40];
  for (const auto& row : summary) {
    out << family_name(config.family) << ',' << solver_name(row.solver) << ',';
    if (std::isnan(row.gamma))
      out << '-';
    else
      out << gamma_tag(row.gamma);
    std::snprintf(buf, sizeof buf, "%.17g", row.median_final_objective);
    out << ',' << row.seeds << ',' << row.diverged << ',' << buf << '\n';
  }
  return summary;
}

}  // namespace bregcd
