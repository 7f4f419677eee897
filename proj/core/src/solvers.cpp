#include "bregcd/solvers.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bregcd/errors.hpp"
#include "bregcd/prox.hpp"

namespace bregcd {

namespace {

constexpr double kBlowupFactor = 1e6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool positive_residuals_needed(const ProblemInstance& p) {
  return p.family != Family::Quadratic;
}

bool residuals_ok(const ProblemInstance& p, const Eigen::VectorXd& ax) {
  if (!ax.allFinite()) return false;
  if (positive_residuals_needed(p) && !(ax.array() > 0.0).all()) return false;
  return true;
}

double stationarity_or_nan(const ProblemInstance& p, const Eigen::VectorXd& x, bool enabled) {
  if (!enabled) return std::nan("");
  try {
    return stationarity_gap(p, x);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

double objective_or_nan(const ProblemInstance& p, const Eigen::VectorXd& x) {
  try {
    return objective(p, x);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

}  // namespace

const char* solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Rbcd: return "rbcd";
    case SolverKind::Arbcd: return "arbcd";
    case SolverKind::ArbcdEfficient: return "arbcd-eff";
    case SolverKind::Bpg: return "bpg";
    case SolverKind::Abpg: return "abpg";
  }
  return "?";
}

SolverKind solver_from_name(const std::string& name) {
  if (name == "rbcd") return SolverKind::Rbcd;
  if (name == "arbcd") return SolverKind::Arbcd;
  if (name == "arbcd-eff" || name == "arbcd_eff") return SolverKind::ArbcdEfficient;
  if (name == "bpg") return SolverKind::Bpg;
  if (name == "abpg") return SolverKind::Abpg;
  throw UsageError("unknown solver '" + name + "'");
}

void SolverConfig::validate(const ProblemInstance& p) const {
  if (epochs < 1) throw UsageError("config: epochs >= 1 required");
  const bool accelerated = solver == SolverKind::Arbcd || solver == SolverKind::ArbcdEfficient ||
                           solver == SolverKind::Abpg;
  if (accelerated && !(gamma > 0.0)) throw UsageError("config: gamma > 0 required");
  if (stepsize_rule == StepsizeRule::Custom) {
    if (!custom_alpha) throw UsageError("config: custom stepsize rule without alphas");
    if (custom_alpha->size() != p.blocks()) {
      throw UsageError("config: one custom alpha per block required");
    }
    for (int i = 0; i < p.blocks(); ++i) {
      double limit = (1.0 + p.reference.theta(i)) / p.reference.weight(i);
      if (!((*custom_alpha)[i] > 0.0 && (*custom_alpha)[i] < limit)) {
        throw UsageError("config: custom alpha outside (0, (1+theta_i)/L_i) on block " +
                         std::to_string(i));
      }
    }
  }
}

std::string SolverConfig::summary() const {
  std::ostringstream ss;
  ss << "solver=" << solver_name(solver) << " epochs=" << epochs << " seed=" << seed;
  if (solver == SolverKind::Arbcd || solver == SolverKind::ArbcdEfficient ||
      solver == SolverKind::Abpg) {
    ss << " gamma=" << gamma << " schedule="
       << (beta_schedule == BetaSchedule::ClosedForm ? "closed" : "equality");
  }
  ss << " stepsize=" << (stepsize_rule == StepsizeRule::Default ? "default" : "custom");
  if (solver == SolverKind::Rbcd) {
    ss << " selection=" << (selection == BlockSelection::UniformRandom ? "uniform" : "sweep");
  }
  return ss.str();
}

double beta_closed_form(long k, double gamma) {
  if (k < 0) throw UsageError("beta_closed_form: k >= 0 required");
  if (!(gamma > 0.0)) throw UsageError("beta_closed_form: gamma > 0 required");
  return gamma / (static_cast<double>(k) + gamma);
}

double beta_next_equality(double beta_prev, double gamma) {
  if (!(beta_prev > 0.0 && beta_prev <= 1.0)) {
    throw UsageError("beta_next_equality: beta_prev in (0,1] required");
  }
  if (!(gamma > 0.0)) throw UsageError("beta_next_equality: gamma > 0 required");
  const double rhs = 1.0 / std::pow(beta_prev, gamma);
  // (1 - b)/b^gamma decreases from +inf to 0 on (0,1]; bisect the sign change.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    double val = (1.0 - mid) / std::pow(mid, gamma);
    if (val > rhs)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd default_start(const ProblemInstance& p) {
  return Eigen::VectorXd::Ones(p.dim());
}

Eigen::VectorXd prox_map(const ProblemInstance& p, const Eigen::VectorXd& x) {
  Eigen::VectorXd g = full_gradient(p, x);
  Eigen::VectorXd t(p.dim());
  for (int i = 0; i < p.blocks(); ++i) {
    p.partition.segment(t, i) = bregman_prox(
        p.reference.kind(i), p.partition.segment(x, i), p.partition.segment(g, i),
        1.0 / p.reference.weight(i), p.regularizer.block(i));
  }
  return t;
}

double stationarity_gap(const ProblemInstance& p, const Eigen::VectorXd& x) {
  return weighted_distance(p.reference, prox_map(p, x), x);
}

// ---- RBCD ------------------------------------------------------------------

RbcdState::RbcdState(const ProblemInstance& p, Eigen::VectorXd x0, std::uint64_t seed)
    : x(std::move(x0)), cache(p.A, x), rng(seed) {}

void rbcd_apply(RbcdState& state, const ProblemInstance& p, const Eigen::VectorXd& alpha,
                int block) {
  Eigen::VectorXd g = partial_gradient(p, state.x, state.cache, block);
  auto xi = p.partition.segment(state.x, block);
#ifndef NDEBUG
  double f_before = objective_from_cache(p, state.x, state.cache);
#endif
  Eigen::VectorXd updated = bregman_prox(p.reference.kind(block), xi, g, alpha[block],
                                         p.regularizer.block(block));
  Eigen::VectorXd delta = updated - xi;
  xi = updated;
  state.cache.apply_block_update(p.A, p.partition, block, delta);
  ++state.steps;
#ifndef NDEBUG
  // the update cannot leave the domain, and every admissible stepsize buys
  // at least ((1+theta)/alpha - L) D_h of descent
  assert(in_domain(p.reference.kind(block), Eigen::VectorXd(xi)));
  double coef = (1.0 + p.reference.theta(block)) / alpha[block] - p.reference.weight(block);
  double dh = bregman_distance(p.reference.kind(block), Eigen::VectorXd(xi), updated - delta);
  assert(f_before - objective_from_cache(p, state.x, state.cache) >= coef * dh - 1e-8);
#endif
}

int rbcd_step(RbcdState& state, const ProblemInstance& p, const Eigen::VectorXd& alpha) {
  int block = state.rng.uniform_index(p.blocks());
  rbcd_apply(state, p, alpha, block);
  return block;
}

namespace {

Eigen::VectorXd resolve_alpha(const ProblemInstance& p, const SolverConfig& config) {
  if (config.stepsize_rule == StepsizeRule::Custom) return *config.custom_alpha;
  Eigen::VectorXd alpha(p.blocks());
  for (int i = 0; i < p.blocks(); ++i) alpha[i] = p.reference.alpha_default(i);
  return alpha;
}

}  // namespace

SolverTrace run_rbcd(const ProblemInstance& p, const SolverConfig& config) {
  config.validate(p);
  const auto t0 = Clock::now();
  SolverTrace trace;
  trace.seed = config.seed;
  trace.config = config.summary();

  RbcdState state(p, default_start(p), config.seed);
  const Eigen::VectorXd alpha = resolve_alpha(p, config);
  const int n = p.blocks();

  trace.records.push_back({0, 0, objective_from_cache(p, state.x, state.cache),
                           stationarity_or_nan(p, state.x, config.record_stationarity),
                           seconds_since(t0), false});

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    try {
      if (config.selection == BlockSelection::UniformRandom) {
        for (int s = 0; s < n; ++s) rbcd_step(state, p, alpha);
      } else {
        state.rng.shuffle(order);
        for (int block : order) rbcd_apply(state, p, alpha, block);
      }
    } catch (const std::exception& e) {
      throw SolverAbort(std::string("rbcd step failed in epoch ") + std::to_string(epoch) + ": " +
                            e.what(),
                        std::move(trace));
    }
    state.cache.reset(p.A, state.x);
    trace.records.push_back({epoch, state.steps, objective_from_cache(p, state.x, state.cache),
                             stationarity_or_nan(p, state.x, config.record_stationarity),
                             seconds_since(t0), false});
  }
  trace.final_point = state.x;
  return trace;
}

// ---- BPG -------------------------------------------------------------------

SolverTrace run_bpg(const ProblemInstance& p, const SolverConfig& config) {
  config.validate(p);
  const auto t0 = Clock::now();
  SolverTrace trace;
  trace.seed = config.seed;
  trace.config = config.summary();

  Eigen::VectorXd x = default_start(p);
  const Eigen::VectorXd alpha = resolve_alpha(p, config);

  trace.records.push_back({0, 0, objective(p, x),
                           stationarity_or_nan(p, x, config.record_stationarity),
                           seconds_since(t0), false});

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    try {
      Eigen::VectorXd g = full_gradient(p, x);
      Eigen::VectorXd next(p.dim());
      for (int i = 0; i < p.blocks(); ++i) {
        p.partition.segment(next, i) =
            bregman_prox(p.reference.kind(i), p.partition.segment(x, i),
                         p.partition.segment(g, i), alpha[i], p.regularizer.block(i));
      }
      x = std::move(next);
    } catch (const std::exception& e) {
      throw SolverAbort(std::string("bpg step failed in epoch ") + std::to_string(epoch) + ": " +
                            e.what(),
                        std::move(trace));
    }
    trace.records.push_back({epoch, epoch, objective(p, x),
                             stationarity_or_nan(p, x, config.record_stationarity),
                             seconds_since(t0), false});
  }
  trace.final_point = x;
  return trace;
}

// ---- accelerated -----------------------------------------------------------

ArbcdState::ArbcdState(const ProblemInstance& p, Eigen::VectorXd x0, std::uint64_t seed)
    : x(std::move(x0)), z(x), cache_x(p.A, x), cache_z(p.A, z), rng(seed) {}

bool arbcd_step(ArbcdState& state, const ProblemInstance& p, double gamma,
                BetaSchedule schedule, int n_blocks_override) {
  if (state.diverged) return false;
  const int n = n_blocks_override > 0 ? n_blocks_override : p.blocks();
  const double beta = state.beta;

  Eigen::VectorXd ay = (1.0 - beta) * state.cache_x.value() + beta * state.cache_z.value();
  if (!residuals_ok(p, ay)) {
    state.diverged = true;
    return false;
  }

  try {
    if (n == 1) {
      // full-vector variant: every block moves, no sampling
      Eigen::VectorXd g = full_gradient_from_ax(p, ay);
      Eigen::VectorXd y = state.y();
      Eigen::VectorXd znext(p.dim());
      for (int i = 0; i < p.blocks(); ++i) {
        double alpha_eff =
            1.0 / (std::pow(beta, gamma - 1.0) * p.reference.weight(i));
        p.partition.segment(znext, i) =
            bregman_prox(p.reference.kind(i), p.partition.segment(state.z, i),
                         p.partition.segment(g, i), alpha_eff, p.regularizer.block(i));
      }
      Eigen::VectorXd xnext = y + beta * (znext - state.z);
      if (!znext.allFinite() || !xnext.allFinite()) {
        state.diverged = true;
        return false;
      }
      state.z = std::move(znext);
      state.x = std::move(xnext);
      state.cache_z.reset(p.A, state.z);
      state.cache_x.reset(p.A, state.x);
    } else {
      int block = state.rng.uniform_index(n);
      Eigen::VectorXd g = partial_gradient_from_ax(p, ay, block);
      auto zi = p.partition.segment(state.z, block);
      double alpha_eff =
          1.0 / (std::pow(static_cast<double>(n) * beta, gamma - 1.0) *
                 p.reference.weight(block));
      Eigen::VectorXd znext =
          bregman_prox(p.reference.kind(block), zi, g, alpha_eff, p.regularizer.block(block));
      if (!znext.allFinite() || !in_domain(p.reference.kind(block), znext)) {
        state.diverged = true;
        return false;
      }
      Eigen::VectorXd delta = znext - zi;

      // x^+ = y + n beta (z^+ - z): differs from y on this block only
      state.x = (1.0 - beta) * state.x + beta * state.z;
      p.partition.segment(state.x, block) += static_cast<double>(n) * beta * delta;
      Eigen::VectorXd col_delta =
          p.A.middleCols(p.partition.offset(block), p.partition.size(block)) * delta;
      Eigen::VectorXd ax_next = ay + static_cast<double>(n) * beta * col_delta;

      zi = znext;
      state.cache_z.apply_block_update(p.A, p.partition, block, delta);
      state.cache_x.reset_to(std::move(ax_next));
      if (!state.x.allFinite() || !state.cache_x.value().allFinite()) {
        state.diverged = true;
        return false;
      }
    }
  } catch (const UnboundedSubproblemError&) {
    state.diverged = true;
    return false;
  } catch (const DomainError&) {
    state.diverged = true;
    return false;
  }

  ++state.k;
  state.beta = schedule == BetaSchedule::ClosedForm ? beta_closed_form(state.k, gamma)
                                                    : beta_next_equality(beta, gamma);
  return true;
}

ArbcdEfficientState::ArbcdEfficientState(const ProblemInstance& p, Eigen::VectorXd x0,
                                         std::uint64_t seed)
    : u(Eigen::VectorXd::Zero(x0.size())),
      v(std::move(x0)),
      cache_u(p.A, u),
      cache_v(p.A, v),
      rng(seed) {}

Eigen::VectorXd ArbcdEfficientState::gradient_point(double gamma) const {
  return std::pow(beta, gamma) * u + v;
}

Eigen::VectorXd ArbcdEfficientState::iterate(double gamma) const {
  return std::pow(beta_prev, gamma) * u + v;
}

bool arbcd_efficient_step(ArbcdEfficientState& state, const ProblemInstance& p, double gamma,
                          BetaSchedule schedule) {
  if (state.diverged) return false;
  const int n = p.blocks();
  const double beta = state.beta;
  const double beta_pow = std::pow(beta, gamma);

  Eigen::VectorXd aw = beta_pow * state.cache_u.value() + state.cache_v.value();
  if (!residuals_ok(p, aw)) {
    state.diverged = true;
    return false;
  }

  try {
    int block = state.rng.uniform_index(n);
    Eigen::VectorXd g = partial_gradient_from_ax(p, aw, block);
    auto vi = p.partition.segment(state.v, block);
    double alpha_eff =
        1.0 / (std::pow(static_cast<double>(n) * beta, gamma - 1.0) *
               p.reference.weight(block));
    Eigen::VectorXd vnext =
        bregman_prox(p.reference.kind(block), vi, g, alpha_eff, p.regularizer.block(block));
    if (!vnext.allFinite() || !in_domain(p.reference.kind(block), vnext)) {
      state.diverged = true;
      return false;
    }
    Eigen::VectorXd delta = vnext - vi;
    vi = vnext;
    state.cache_v.apply_block_update(p.A, p.partition, block, delta);

    double coef = (1.0 - static_cast<double>(n) * beta) / beta_pow;
    p.partition.segment(state.u, block) -= coef * delta;
    state.cache_u.apply_block_update(p.A, p.partition, block, (-coef) * delta);
    if (!state.u.allFinite()) {
      state.diverged = true;
      return false;
    }
  } catch (const UnboundedSubproblemError&) {
    state.diverged = true;
    return false;
  } catch (const DomainError&) {
    state.diverged = true;
    return false;
  }

  state.beta_prev = beta;
  ++state.k;
  state.beta = schedule == BetaSchedule::ClosedForm ? beta_closed_form(state.k, gamma)
                                                    : beta_next_equality(beta, gamma);
  return true;
}

namespace {

// Shared trace-driving loop for the three accelerated runner flavours.
template <typename StepFn, typename PointFn, typename RefreshFn>
SolverTrace run_accelerated(const ProblemInstance& p, const SolverConfig& config,
                            int iters_per_epoch, StepFn step, PointFn point, RefreshFn refresh) {
  const auto t0 = Clock::now();
  SolverTrace trace;
  trace.seed = config.seed;
  trace.config = config.summary();

  const Eigen::VectorXd x0 = default_start(p);
  const double f0 = objective(p, x0);
  const double blowup = kBlowupFactor * std::max(1.0, std::abs(f0));

  trace.records.push_back({0, 0, f0, stationarity_or_nan(p, x0, config.record_stationarity),
                           seconds_since(t0), false});

  long iters = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    bool ok = true;
    for (int s = 0; s < iters_per_epoch && ok; ++s) {
      ok = step();
      if (ok) ++iters;
    }
    if (!ok) {
      trace.diverged = true;
      trace.records.push_back({epoch, iters, std::nan(""), std::nan(""), seconds_since(t0), true});
      break;
    }
    refresh();
    Eigen::VectorXd xk = point();
    double fx = objective_or_nan(p, xk);
    bool blew_up = !std::isfinite(fx) || fx > blowup;
    trace.records.push_back({epoch, iters, fx,
                             stationarity_or_nan(p, xk, config.record_stationarity),
                             seconds_since(t0), blew_up});
    trace.final_point = std::move(xk);
    if (blew_up) {
      trace.diverged = true;
      break;
    }
  }
  return trace;
}

}  // namespace

SolverTrace run_arbcd(const ProblemInstance& p, const SolverConfig& config) {
  config.validate(p);
  ArbcdState state(p, default_start(p), config.seed);
  return run_accelerated(
      p, config, p.blocks(),
      [&] { return arbcd_step(state, p, config.gamma, config.beta_schedule); },
      [&] { return state.x; },
      [&] {
        state.cache_x.reset(p.A, state.x);
        state.cache_z.reset(p.A, state.z);
      });
}

SolverTrace run_arbcd_efficient(const ProblemInstance& p, const SolverConfig& config) {
  config.validate(p);
  ArbcdEfficientState state(p, default_start(p), config.seed);
  return run_accelerated(
      p, config, p.blocks(),
      [&] { return arbcd_efficient_step(state, p, config.gamma, config.beta_schedule); },
      // the algorithm's return line: beta^gamma u + v for the current beta
      [&] { return state.gradient_point(config.gamma); },
      [&] {
        state.cache_u.reset(p.A, state.u);
        state.cache_v.reset(p.A, state.v);
      });
}

SolverTrace run_abpg(const ProblemInstance& p, const SolverConfig& config) {
  config.validate(p);
  ArbcdState state(p, default_start(p), config.seed);
  return run_accelerated(
      p, config, 1,
      [&] { return arbcd_step(state, p, config.gamma, config.beta_schedule, 1); },
      [&] { return state.x; }, [&] {});
}

SolverTrace run_solver(const ProblemInstance& p, const SolverConfig& config) {
  switch (config.solver) {
    case SolverKind::Rbcd: return run_rbcd(p, config);
    case SolverKind::Arbcd: return run_arbcd(p, config);
    case SolverKind::ArbcdEfficient: return run_arbcd_efficient(p, config);
    case SolverKind::Bpg: return run_bpg(p, config);
    case SolverKind::Abpg: return run_abpg(p, config);
  }
  throw UsageError("unknown solver kind");
}

}  // namespace bregcd
