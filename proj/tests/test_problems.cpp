#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "bregcd/errors.hpp"
#include "bregcd/instance_io.hpp"
#include "bregcd/oracles.hpp"
#include "bregcd/problem.hpp"
#include "bregcd/rng.hpp"

using namespace bregcd;

namespace {

ProblemInstance tiny(Family family, double a, double b) {
  Eigen::MatrixXd A(1, 1);
  A << a;
  Eigen::VectorXd bv(1);
  bv << b;
  return make_instance(family, A, bv);
}

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("objective values") {
  ProblemInstance poisson = tiny(Family::PoissonInverse, 1.0, 1.0);
  CHECK(objective(poisson, vec1(1)) == doctest::Approx(0.0));
  CHECK(objective(poisson, vec1(2)) == doctest::Approx(1 - std::log(2.0)).epsilon(1e-12));

  ProblemInstance relent = tiny(Family::RelativeEntropyRegression, 1.0, 1.0);
  CHECK(objective(relent, vec1(2)) ==
        doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-12));

  // both KL objectives are divergences, hence nonnegative
  ProblemInstance pp = synth_instance(Family::PoissonInverse, 10, 6, 9);
  ProblemInstance rr = synth_instance(Family::RelativeEntropyRegression, 10, 6, 9);
  Rng rng(1);
  for (int s = 0; s < 50; ++s) {
    Eigen::VectorXd x(6);
    for (int j = 0; j < 6; ++j) x[j] = rng.log_uniform(0.1, 10);
    CHECK(objective(pp, x) >= -1e-12);
    CHECK(objective(rr, x) >= -1e-12);
  }

  // zero-count convention: b_i = 0 rows contribute <a_i, x>
  Eigen::MatrixXd A(2, 1);
  A << 1.0, 2.0;
  Eigen::VectorXd b(2);
  b << 0.0, 1.0;
  ProblemInstance withzero = make_instance(Family::PoissonInverse, A, b);
  CHECK(objective(withzero, vec1(1)) ==
        doctest::Approx(1.0 + (std::log(0.5) - 1 + 2)).epsilon(1e-12));

  CHECK_THROWS_AS(objective(tiny(Family::RelativeEntropyRegression, 1.0, 0.0), vec1(1)),
                  DomainError);
  CHECK_THROWS_AS(objective(poisson, vec1(-1)), DomainError);
}

TEST_CASE("gradients") {
  ProblemInstance poisson = tiny(Family::PoissonInverse, 1.0, 1.0);
  ResidualCache cache(poisson.A, vec1(2));
  CHECK(partial_gradient(poisson, vec1(2), cache, 0)[0] == doctest::Approx(0.5));

  ProblemInstance relent = tiny(Family::RelativeEntropyRegression, 1.0, 1.0);
  ResidualCache cache2(relent.A, vec1(2));
  CHECK(partial_gradient(relent, vec1(2), cache2, 0)[0] ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  ProblemInstance quad = make_instance(Family::Quadratic, Q, zero);
  Eigen::VectorXd x(2);
  x << 1, 2;
  CHECK(full_gradient(quad, x).isApprox(x));

  // full gradient vanishes where Ax = b exactly
  Eigen::MatrixXd A(2, 2);
  A << 1, 2, 3, 4;
  Eigen::VectorXd xs(2);
  xs << 1, 1;
  ProblemInstance fit = make_instance(Family::PoissonInverse, A, A * xs);
  CHECK(full_gradient(fit, xs).cwiseAbs().maxCoeff() <= 1e-12);

  // finite differences agree at random interior points
  ProblemInstance pp = synth_instance(Family::PoissonInverse, 12, 8, 4);
  Rng rng(5);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd pt(8);
    for (int j = 0; j < 8; ++j) pt[j] = rng.log_uniform(0.3, 3.0);
    Eigen::VectorXd g = full_gradient(pp, pt);
    Eigen::VectorXd fd = fd_gradient(pp, pt, 1e-6);
    for (int j = 0; j < 8; ++j) {
      CHECK(std::abs(g[j] - fd[j]) / std::max(1.0, std::abs(g[j])) < 1e-5);
    }
    // block gradients agree with the full gradient restricted to the block
    ResidualCache c(pp.A, pt);
    for (int i = 0; i < pp.blocks(); ++i) {
      CHECK(std::abs(partial_gradient(pp, pt, c, i)[0] - g[i]) <= 1e-12);
    }
  }
}

TEST_CASE("smoothness constants") {
  Eigen::MatrixXd A1(3, 2);
  A1.setOnes();
  Eigen::VectorXd b1(3);
  b1 << 1, 2, 3;
  CHECK(smoothness_constants(Family::PoissonInverse, A1, b1, BlockPartition::scalar(2))
            .isApproxToConstant(6.0));

  Eigen::MatrixXd A2(2, 2);
  A2 << 1, 2, 3, 4;
  Eigen::VectorXd L2 = smoothness_constants(Family::RelativeEntropyRegression, A2,
                                            Eigen::VectorXd::Ones(2), BlockPartition::scalar(2));
  CHECK(L2[0] == doctest::Approx(4.0));
  CHECK(L2[1] == doctest::Approx(6.0));

  Eigen::MatrixXd Q = 2.0 * Eigen::MatrixXd::Identity(3, 3);
  CHECK(smoothness_constants(Family::Quadratic, Q, Eigen::VectorXd::Zero(3),
                             BlockPartition::scalar(3))
            .isApproxToConstant(2.0));

  // multi-coordinate quadratic block: spectral norm of the diagonal block
  Eigen::MatrixXd Q2(2, 2);
  Q2 << 2, 1, 1, 2;
  Eigen::VectorXd L3 = smoothness_constants(Family::Quadratic, Q2, Eigen::VectorXd::Zero(2),
                                            BlockPartition::uniform(2, 1));
  CHECK(L3[0] == doctest::Approx(3.0));
}

TEST_CASE("synthetic instances") {
  ProblemInstance a = synth_instance(Family::PoissonInverse, 20, 15, 42);
  ProblemInstance b = synth_instance(Family::PoissonInverse, 20, 15, 42);
  CHECK(a.A == b.A);
  CHECK(a.b == b.b);
  CHECK(a.reference.weights == b.reference.weights);

  ProblemInstance c = synth_instance(Family::PoissonInverse, 20, 15, 43);
  CHECK(a.A != c.A);

  // degenerate size passes all invariants
  for (Family fam : {Family::PoissonInverse, Family::RelativeEntropyRegression,
                     Family::Quadratic}) {
    ProblemInstance d = synth_instance(fam, 1, 1, 7);
    CHECK_NOTHROW(d.validate());
    CHECK(d.blocks() == 1);
  }

  // paper-scale instance constructs cleanly
  ProblemInstance big = synth_instance(Family::PoissonInverse, 500, 500, 1);
  CHECK(big.rows() == 500);
  CHECK(big.dim() == 500);
  CHECK(big.reference.weights[0] == doctest::Approx(big.b.lpNorm<1>()));

  ProblemInstance q = synth_instance(Family::Quadratic, 30, 30, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.A);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("residual cache") {
  ProblemInstance p = synth_instance(Family::PoissonInverse, 30, 20, 8);
  Rng rng(11);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(20);
  ResidualCache cache(p.A, x);
  for (int s = 0; s < 10000; ++s) {
    int j = rng.uniform_index(20);
    double delta = (rng.log_uniform(0.5, 2.0) - 1.0) * x[j];
    x[j] += delta;
    cache.apply_block_update(p.A, p.partition, j, vec1(delta));
  }
  CHECK(cache.drift(p.A, x) < 1e-9);
}

TEST_CASE("relative smoothness residual") {
  ProblemInstance p = synth_instance(Family::PoissonInverse, 20, 10, 3);
  Rng rng(13);
  std::vector<Eigen::VectorXd> pts;
  for (int s = 0; s < 100; ++s) {
    Eigen::VectorXd x(10);
    for (int j = 0; j < 10; ++j) x[j] = rng.log_uniform(0.2, 3.0);
    pts.push_back(x);
  }
  for (int j = 0; j < 5; ++j) {
    Eigen::VectorXd spike = Eigen::VectorXd::Constant(10, 0.01);
    spike[j] = 100.0;
    pts.push_back(spike);
  }
  CHECK(relative_smoothness_residual(p, pts) <= 1e-4);
  CHECK(relative_smoothness_residual(p, pts, 0.5) > 0.0);  // halved constants are invalid

  ProblemInstance q = synth_instance(Family::Quadratic, 10, 10, 3);
  std::vector<Eigen::VectorXd> qpts;
  for (int s = 0; s < 20; ++s) {
    Eigen::VectorXd x(10);
    for (int j = 0; j < 10; ++j) x[j] = rng.uniform(-2, 2);
    qpts.push_back(x);
  }
  CHECK(relative_smoothness_residual(q, qpts) <= 1e-8);

  CHECK_THROWS_AS(relative_smoothness_residual(p, {vec1(0.5).cwiseMin(-1.0)}), DomainError);
}

TEST_CASE("instance file round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bregcd_io_test";
  fs::create_directories(dir);
  std::string path = (dir / "inst.txt").string();

  for (Family fam : {Family::PoissonInverse, Family::Quadratic}) {
    ProblemInstance p = synth_instance(fam, 7, 5, 21);
    save_instance(p, path);
    ProblemInstance q = load_instance(fam, path);
    CHECK(p.A == q.A);  // 17 significant digits reproduce doubles exactly
    CHECK(p.b == q.b);
    CHECK(p.reference.weights == q.reference.weights);
  }
  CHECK_THROWS_AS(load_instance(Family::PoissonInverse, (dir / "missing.txt").string()),
                  IoError);
  fs::remove_all(dir);
}

TEST_CASE("instance validation") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, 2, 0;  // zero column
  CHECK_THROWS_AS(make_instance(Family::PoissonInverse, A, Eigen::VectorXd::Ones(2)),
                  DomainError);
  Eigen::MatrixXd B(2, 2);
  B << 0, 0, 1, 1;  // zero row
  CHECK_THROWS_AS(make_instance(Family::PoissonInverse, B, Eigen::VectorXd::Ones(2)),
                  DomainError);
  Eigen::MatrixXd C(2, 2);
  C << 1, 2, 3, 4;  // not symmetric
  CHECK_THROWS_AS(make_instance(Family::Quadratic, C, Eigen::VectorXd::Ones(2)), DomainError);
}
