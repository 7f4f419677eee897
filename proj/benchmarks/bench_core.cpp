#include <benchmark/benchmark.h>

#include "bregcd/oracles.hpp"
#include "bregcd/prox.hpp"
#include "bregcd/solvers.hpp"

using namespace bregcd;

namespace {

void BM_BregmanProx(benchmark::State& state, RefKind kind) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.7);
  Eigen::VectorXd g = Eigen::VectorXd::Constant(n, 0.3);
  for (auto _ : state) {
    Eigen::VectorXd u = bregman_prox(kind, x, g, 0.4, RegKind::NonnegIndicator);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_ProxNumeric(benchmark::State& state, RefKind kind) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.7);
  Eigen::VectorXd g = Eigen::VectorXd::Constant(n, 0.3);
  for (auto _ : state) {
    Eigen::VectorXd u = bregman_prox_numeric(kind, x, g, 0.4, RegKind::NonnegIndicator);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_CoordinateEpoch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ProblemInstance p = synth_instance(Family::PoissonInverse, n, n, 1);
  Eigen::VectorXd alpha(n);
  for (int i = 0; i < n; ++i) alpha[i] = p.reference.alpha_default(i);
  for (auto _ : state) {
    RbcdState s(p, default_start(p), 1);
    for (int k = 0; k < n; ++k) rbcd_step(s, p, alpha);
    benchmark::DoNotOptimize(s.x);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_AcceleratedEpoch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ProblemInstance p = synth_instance(Family::PoissonInverse, n, n, 1);
  for (auto _ : state) {
    ArbcdState s(p, default_start(p), 1);
    for (int k = 0; k < n; ++k) arbcd_step(s, p, 2.0, BetaSchedule::ClosedForm);
    benchmark::DoNotOptimize(s.x);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_EfficientEpoch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ProblemInstance p = synth_instance(Family::PoissonInverse, n, n, 1);
  for (auto _ : state) {
    ArbcdEfficientState s(p, default_start(p), 1);
    for (int k = 0; k < n; ++k) arbcd_efficient_step(s, p, 2.0, BetaSchedule::EqualityRecurrence);
    benchmark::DoNotOptimize(s.v);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_FullGradientStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ProblemInstance p = synth_instance(Family::PoissonInverse, n, n, 1);
  SolverConfig c;
  c.epochs = 1;
  c.solver = SolverKind::Bpg;
  c.record_stationarity = false;
  for (auto _ : state) {
    SolverTrace t = run_bpg(p, c);
    benchmark::DoNotOptimize(t);
  }
}

void BM_StationarityGap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ProblemInstance p = synth_instance(Family::PoissonInverse, n, n, 1);
  Eigen::VectorXd x = default_start(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationarity_gap(p, x));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_BregmanProx, euclidean, RefKind::SquaredEuclidean)->Arg(1000);
BENCHMARK_CAPTURE(BM_BregmanProx, shannon, RefKind::ShannonEntropy)->Arg(1000);
BENCHMARK_CAPTURE(BM_BregmanProx, burg, RefKind::BurgEntropy)->Arg(1000);
BENCHMARK_CAPTURE(BM_ProxNumeric, burg, RefKind::BurgEntropy)->Arg(1000);
BENCHMARK(BM_CoordinateEpoch)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_AcceleratedEpoch)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_EfficientEpoch)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_FullGradientStep)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_StationarityGap)->RangeMultiplier(2)->Range(64, 512);

BENCHMARK_MAIN();
