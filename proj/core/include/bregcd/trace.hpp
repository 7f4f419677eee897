#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace bregcd {

struct TraceRecord {
  int epoch = 0;
  long iterations = 0;        // coordinate steps done (full-gradient iterations for BPG/ABPG)
  double objective = 0.0;     // smooth part f at the recorded point
  double stationarity = 0.0;  // D_H(T(x), x); NaN if undefined at the point
  double elapsed_seconds = 0.0;
  bool diverged = false;
};

struct SolverTrace {
  std::vector<TraceRecord> records;  // epoch 0 (initial point) plus one per epoch
  std::uint64_t seed = 0;
  std::string config;        // one-line config snapshot
  bool diverged = false;
  Eigen::VectorXd final_point;  // the point behind the last record (in-memory only)

  double final_objective() const;
  double initial_objective() const;
};

/// CSV with header "epoch,iterations,objective,stationarity,elapsed_s,diverged",
/// one row per record, decimals at 17 significant digits, trailing newline.
/// include_timing=false writes 0 in the elapsed_s column so repeated runs
/// produce byte-identical files.
void write_trace_csv(const SolverTrace& trace, const std::string& path,
                     bool include_timing = true);

/// Reads records back; field-for-field inverse of write_trace_csv.
std::vector<TraceRecord> read_trace_csv(const std::string& path);

}  // namespace bregcd
