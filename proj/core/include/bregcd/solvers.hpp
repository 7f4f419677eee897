#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>

#include "bregcd/problem.hpp"
#include "bregcd/rng.hpp"
#include "bregcd/trace.hpp"

namespace bregcd {

enum class SolverKind { Rbcd, Arbcd, ArbcdEfficient, Bpg, Abpg };
enum class BetaSchedule { ClosedForm, EqualityRecurrence };
enum class StepsizeRule { Default, Custom };
/// UniformRandom is the i.i.d. selection the convergence analysis assumes.
/// ShuffledSweep visits every block once per epoch in a fresh random order;
/// the benchmark harness uses it for the figure protocols.
enum class BlockSelection { UniformRandom, ShuffledSweep };

const char* solver_name(SolverKind kind);
SolverKind solver_from_name(const std::string& name);

/// Thrown when a descent run hits an unrecoverable step error (bad custom
/// stepsize, domain violation); carries what was traced so far.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, SolverTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SolverTrace& partial_trace() const { return partial_; }

 private:
  SolverTrace partial_;
};

struct SolverConfig {
  SolverKind solver = SolverKind::Rbcd;
  int epochs = 100;
  std::uint64_t seed = 1;
  double gamma = 2.0;  // scaling exponent driving the accelerated stepsizes
  BetaSchedule beta_schedule = BetaSchedule::ClosedForm;
  StepsizeRule stepsize_rule = StepsizeRule::Default;
  std::optional<Eigen::VectorXd> custom_alpha;  // per block, required for Custom
  BlockSelection selection = BlockSelection::UniformRandom;
  bool record_stationarity = true;

  void validate(const ProblemInstance& p) const;
  std::string summary() const;
};

/// Mixing parameter beta_k = gamma / (k + gamma); satisfies
/// (1 - beta_{k+1}) / beta_{k+1}^gamma <= 1 / beta_k^gamma for gamma >= 1
/// (for gamma < 1 it misses by O(1/k^2); use the equality recurrence there).
double beta_closed_form(long k, double gamma);

/// Unique root in (0,1) of (1 - beta) / beta^gamma = 1 / beta_prev^gamma,
/// by bisection to 1e-12.
double beta_next_equality(double beta_prev, double gamma);

/// Full-vector Bregman proximal map against the weighted reference:
/// block i of the result is bregman_prox(ref_i, x_i, grad_i f(x), 1/L_i, r_i).
Eigen::VectorXd prox_map(const ProblemInstance& p, const Eigen::VectorXd& x);

/// D_H(prox_map(x), x) >= 0; zero exactly at stationary points.
double stationarity_gap(const ProblemInstance& p, const Eigen::VectorXd& x);

/// One-step state for the randomized block coordinate method.
struct RbcdState {
  Eigen::VectorXd x;
  ResidualCache cache;
  Rng rng;
  long steps = 0;

  RbcdState(const ProblemInstance& p, Eigen::VectorXd x0, std::uint64_t seed);
};

/// Draws a block uniformly, applies the Bregman prox step at the configured
/// stepsize, and refreshes the residual cache in O(M * N_i).
/// Returns the updated block index.
int rbcd_step(RbcdState& state, const ProblemInstance& p, const Eigen::VectorXd& alpha);

/// Same update on a caller-chosen block (used by the sweep selection).
void rbcd_apply(RbcdState& state, const ProblemInstance& p, const Eigen::VectorXd& alpha,
                int block);

/// Lockstep-inspectable state of the accelerated method (x/y/z form).
struct ArbcdState {
  Eigen::VectorXd x, z;
  ResidualCache cache_x, cache_z;
  Rng rng;
  double beta = 1.0;
  long k = 0;
  bool diverged = false;

  ArbcdState(const ProblemInstance& p, Eigen::VectorXd x0, std::uint64_t seed);
  Eigen::VectorXd y() const { return (1.0 - beta) * x + beta * z; }
};

/// One accelerated iteration; returns false once the run has diverged
/// (evaluation left the objective's domain, a subproblem was unbounded, or
/// an iterate went nonfinite).
bool arbcd_step(ArbcdState& state, const ProblemInstance& p, double gamma,
                BetaSchedule schedule, int n_blocks_override = 0);

/// Change-of-variables state of the same method (u/v form, O(N_i) updates).
struct ArbcdEfficientState {
  Eigen::VectorXd u, v;
  ResidualCache cache_u, cache_v;
  Rng rng;
  double beta = 1.0;
  long k = 0;
  bool diverged = false;

  ArbcdEfficientState(const ProblemInstance& p, Eigen::VectorXd x0, std::uint64_t seed);
  /// Gradient point of the next iteration, beta_k^gamma u + v.
  Eigen::VectorXd gradient_point(double gamma) const;
  /// x^k reconstruction beta_{k-1}^gamma u^k + v^k (equals x0 at k = 0).
  Eigen::VectorXd iterate(double gamma) const;

  double beta_prev = 1.0;
};

bool arbcd_efficient_step(ArbcdEfficientState& state, const ProblemInstance& p, double gamma,
                          BetaSchedule schedule);

SolverTrace run_rbcd(const ProblemInstance& p, const SolverConfig& config);
SolverTrace run_arbcd(const ProblemInstance& p, const SolverConfig& config);
SolverTrace run_arbcd_efficient(const ProblemInstance& p, const SolverConfig& config);
/// Joint Bregman prox step on every block with stepsizes (1+theta_i)/(2 L_i);
/// one iteration is logged as one epoch.
SolverTrace run_bpg(const ProblemInstance& p, const SolverConfig& config);
/// The accelerated method with the whole vector treated as a single block.
SolverTrace run_abpg(const ProblemInstance& p, const SolverConfig& config);

SolverTrace run_solver(const ProblemInstance& p, const SolverConfig& config);

/// Default all-ones starting point shared by every solver.
Eigen::VectorXd default_start(const ProblemInstance& p);

}  // namespace bregcd
