#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "bregcd/errors.hpp"
#include "bregcd/experiment.hpp"
#include "bregcd/trace.hpp"

using namespace bregcd;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("seed spec expansion") {
  CHECK(expand_seed_spec("1..10").size() == 10);
  CHECK(expand_seed_spec("1..10").front() == 1);
  CHECK(expand_seed_spec("1..10").back() == 10);
  CHECK(expand_seed_spec("3,7,19") == std::vector<std::uint64_t>{3, 7, 19});
  CHECK(expand_seed_spec("5") == std::vector<std::uint64_t>{5});
  CHECK_THROWS_AS(expand_seed_spec("10..1"), UsageError);
  CHECK_THROWS_AS(expand_seed_spec("abc"), UsageError);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig c;
  c.solvers = {};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.solvers = {SolverKind::Rbcd};
  c.seeds = {};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.seeds = {1};
  c.epochs = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.epochs = 1;
  c.solvers = {SolverKind::Arbcd};
  c.gammas = {};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.gammas = {-1.0};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.gammas = {2.0};
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("trace csv round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bregcd_trace_test";
  fs::create_directories(dir);
  std::string path = (dir / "t.csv").string();

  SolverTrace trace;
  for (int e = 0; e < 100; ++e) {
    trace.records.push_back({e, e * 7L, 1.0 / (e + 1), 2.0 / (e + 1) / 3.0,
                             0.001 * e, false});
  }
  trace.records.back().diverged = true;
  trace.records.back().objective = std::nan("");
  write_trace_csv(trace, path);

  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 101);  // header plus one row per record

  auto got = read_trace_csv(path);
  REQUIRE(got.size() == trace.records.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].epoch == trace.records[i].epoch);
    CHECK(got[i].iterations == trace.records[i].iterations);
    bool same_obj = got[i].objective == trace.records[i].objective ||
                    (std::isnan(got[i].objective) && std::isnan(trace.records[i].objective));
    CHECK(same_obj);
    CHECK(got[i].stationarity == trace.records[i].stationarity);
    CHECK(got[i].elapsed_seconds == trace.records[i].elapsed_seconds);
    CHECK(got[i].diverged == trace.records[i].diverged);
  }
  fs::remove_all(dir);
}

TEST_CASE("sweep writes traces and a summary deterministically") {
  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path() / "bregcd_exp_test";
  fs::remove_all(base);

  ExperimentConfig config;
  config.family = Family::PoissonInverse;
  config.m = 30;
  config.n = 30;
  config.epochs = 8;
  config.seeds = {1, 2};
  config.solvers = {SolverKind::Rbcd, SolverKind::Arbcd};
  config.gammas = {2.0};
  config.include_timing = false;

  config.out_dir = (base / "a").string();
  auto sum1 = run_experiment(config);
  config.out_dir = (base / "b").string();
  auto sum2 = run_experiment(config);

  REQUIRE(sum1.size() == 2);
  CHECK(sum1[0].seeds == 2);
  CHECK(sum1[0].diverged == 0);
  for (std::size_t i = 0; i < sum1.size(); ++i) {
    CHECK(sum1[i].median_final_objective == sum2[i].median_final_objective);
  }

  // byte-identical outputs with timing suppressed
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    fs::path other = base / "b" / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
    ++compared;
  }
  CHECK(compared == 5);  // 2 solvers x 2 seeds + summary.csv

  // rbcd trace objective column is nonincreasing
  auto recs = read_trace_csv((base / "a" / "poisson_rbcd_seed1.csv").string());
  REQUIRE(recs.size() == 9);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    CHECK(recs[i].objective <= recs[i - 1].objective + 1e-10);
  }

  // a diverged run is flagged in the summary but does not disturb others
  ExperimentConfig div = config;
  div.family = Family::RelativeEntropyRegression;
  div.m = 40;
  div.n = 40;
  div.epochs = 30;
  div.gammas = {0.1};
  div.seeds = {1, 2, 3};
  div.out_dir = (base / "div").string();
  auto sum3 = run_experiment(div);
  CHECK(sum3[0].diverged == 0);  // rbcd untouched
  CHECK(sum3[1].diverged >= 1);  // arbcd gamma=0.1
  fs::remove_all(base);
}

TEST_CASE("gamma sweep writes one trace per accelerated combination") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bregcd_gamma_sweep";
  fs::remove_all(dir);
  ExperimentConfig config;
  config.family = Family::PoissonInverse;
  config.m = 20;
  config.n = 20;
  config.epochs = 5;
  config.seeds = {1};
  config.solvers = {SolverKind::Arbcd, SolverKind::Abpg};
  config.gammas = {0.1, 1.0, 2.0};
  config.include_timing = false;
  config.out_dir = dir.string();
  auto summary = run_experiment(config);
  CHECK(summary.size() == 6);  // 2 accelerated solvers x 3 gammas
  int csvs = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().filename() != "summary.csv") ++csvs;
  }
  CHECK(csvs == 6);
  CHECK(fs::exists(dir / "poisson_arbcd_gamma0.1_seed1.csv"));
  CHECK(fs::exists(dir / "poisson_abpg_gamma2_seed1.csv"));
  fs::remove_all(dir);
}

TEST_CASE("single seed and solver produce exactly one trace") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bregcd_single";
  fs::remove_all(dir);
  ExperimentConfig config;
  config.family = Family::Quadratic;
  config.m = 10;
  config.n = 10;
  config.epochs = 3;
  config.seeds = {5};
  config.solvers = {SolverKind::Rbcd};
  config.out_dir = dir.string();
  run_experiment(config);
  int csvs = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().filename() != "summary.csv") ++csvs;
  }
  CHECK(csvs == 1);
  fs::remove_all(dir);
}

#ifdef RBCD_BIN
TEST_CASE("cli config file precedence") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bregcd_cli_test";
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "problem=poisson\nm=12\nn=12\nepochs=50\nseed=1\nsolver=rbcd\n";
  }
  std::string out = (dir / "out").string();
  std::string cmd = std::string(RBCD_BIN) + " run --config " + (dir / "run.cfg").string() +
                    " --epochs 3 --out " + out + " > " + (dir / "stdout.txt").string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::string echoed = slurp(dir / "stdout.txt");
  CHECK(echoed.find("epochs=3") != std::string::npos);  // flag overrides file
  CHECK(echoed.find("m=12") != std::string::npos);      // file value survives
  auto recs = read_trace_csv((fs::path(out) / "poisson_rbcd_seed1.csv").string());
  CHECK(recs.size() == 4);

  // unknown keys in the config file are rejected
  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "problem=poisson\nnot_a_key=1\n";
  }
  std::string bad = std::string(RBCD_BIN) + " run --config " + (dir / "bad.cfg").string() +
                    " --out " + out + " > /dev/null 2>&1";
  CHECK(std::system(bad.c_str()) != 0);

  // empty solver list is a usage error (exit 1)
  std::string empty = std::string(RBCD_BIN) + " run --solver , --m 4 --n 4 --out " + out +
                      " > /dev/null 2>&1";
  int rc = std::system(empty.c_str());
  CHECK(WEXITSTATUS(rc) == 1);
  fs::remove_all(dir);
}
#endif
