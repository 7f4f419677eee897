#include "bregcd/problem.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "bregcd/errors.hpp"
#include "bregcd/oracles.hpp"
#include "bregcd/rng.hpp"

namespace bregcd {

const char* family_name(Family family) {
  switch (family) {
    case Family::PoissonInverse: return "poisson";
    case Family::RelativeEntropyRegression: return "relent";
    case Family::Quadratic: return "quadratic";
  }
  return "?";
}

RefKind family_reference_kind(Family family) {
  switch (family) {
    case Family::PoissonInverse: return RefKind::BurgEntropy;
    case Family::RelativeEntropyRegression: return RefKind::ShannonEntropy;
    case Family::Quadratic: return RefKind::SquaredEuclidean;
  }
  return RefKind::SquaredEuclidean;
}

void ProblemInstance::validate() const {
  if (b.size() != (family == Family::Quadratic ? A.cols() : A.rows())) {
    throw DimensionError("instance: b has the wrong length");
  }
  if (partition.total() != dim()) throw DimensionError("instance: partition/dimension mismatch");
  if (regularizer.size() != blocks()) throw DimensionError("instance: one regularizer per block");
  reference.validate();

  if (family == Family::Quadratic) {
    if (A.rows() != A.cols()) throw DimensionError("quadratic instance: Q must be square");
    double scale = A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
      throw DomainError("quadratic instance: Q must be symmetric");
    }
    return;
  }
  if ((A.array() < 0.0).any()) throw DomainError("instance: A must be nonnegative");
  if ((b.array() < 0.0).any()) throw DomainError("instance: b must be nonnegative");
  for (int i = 0; i < rows(); ++i) {
    if (!(A.row(i).maxCoeff() > 0.0)) throw DomainError("instance: zero row in A", i);
  }
  for (int j = 0; j < dim(); ++j) {
    if (!(A.col(j).maxCoeff() > 0.0)) throw DomainError("instance: zero column in A", j);
  }
}

ProblemInstance ProblemInstance::with_regularizer(RegKind kind) const {
  ProblemInstance q = *this;
  q.regularizer = Regularizer::uniform(blocks(), kind);
  return q;
}

Eigen::VectorXd smoothness_constants(Family family, const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b, const BlockPartition& partition) {
  const int n = partition.blocks();
  Eigen::VectorXd L(n);
  switch (family) {
    case Family::PoissonInverse:
      L.setConstant(b.lpNorm<1>());
      break;
    case Family::RelativeEntropyRegression: {
      Eigen::VectorXd colsum = A.colwise().sum();
      for (int i = 0; i < n; ++i) {
        L[i] = colsum.segment(partition.offset(i), partition.size(i)).maxCoeff();
      }
      break;
    }
    case Family::Quadratic: {
      for (int i = 0; i < n; ++i) {
        if (partition.size(i) == 1) {
          L[i] = A(partition.offset(i), partition.offset(i));
        } else {
          Eigen::MatrixXd block =
              A.block(partition.offset(i), partition.offset(i), partition.size(i),
                      partition.size(i));
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
          L[i] = es.eigenvalues().cwiseAbs().maxCoeff();
        }
      }
      break;
    }
  }
  return L;
}

ProblemInstance make_instance(Family family, Eigen::MatrixXd A, Eigen::VectorXd b,
                              BlockPartition partition, RegKind reg) {
  const int n = partition.blocks();
  Eigen::VectorXd L = smoothness_constants(family, A, b, partition);
  WeightedReference ref =
      WeightedReference::uniform(partition, family_reference_kind(family), std::move(L));
  ProblemInstance p{family,
                    std::move(A),
                    std::move(b),
                    std::move(partition),
                    Regularizer::uniform(n, reg),
                    std::move(ref)};
  p.validate();
  return p;
}

ProblemInstance make_instance(Family family, Eigen::MatrixXd A, Eigen::VectorXd b, RegKind reg) {
  BlockPartition partition = BlockPartition::scalar(static_cast<int>(A.cols()));
  return make_instance(family, std::move(A), std::move(b), std::move(partition), reg);
}

ProblemInstance synth_instance(Family family, int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw UsageError("synth_instance: M, N >= 1 required");
  Rng rng(seed);
  if (family == Family::Quadratic) {
    Eigen::MatrixXd G(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = rng.uniform01();
    Eigen::MatrixXd Q = (G.transpose() * G) / static_cast<double>(m);
    for (int j = 0; j < n; ++j) Q(j, j) += 0.5 + rng.uniform01();
    Eigen::VectorXd b(n);
    for (int j = 0; j < n; ++j) b[j] = rng.uniform01();
    return make_instance(family, std::move(Q), std::move(b));
  }
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.uniform01();
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = rng.uniform01();
  return make_instance(family, std::move(A), std::move(b));
}

void ResidualCache::apply_block_update(const Eigen::MatrixXd& A, const BlockPartition& partition,
                                       int block, const Eigen::VectorXd& delta) {
  if (delta.size() != partition.size(block)) {
    throw DimensionError("residual cache: delta/block size mismatch");
  }
  ax_.noalias() += A.middleCols(partition.offset(block), partition.size(block)) * delta;
}

double ResidualCache::drift(const Eigen::MatrixXd& A, const Eigen::VectorXd& x) const {
  Eigen::VectorXd fresh = A * x;
  double denom = std::max(1.0, fresh.cwiseAbs().maxCoeff());
  return (fresh - ax_).cwiseAbs().maxCoeff() / denom;
}

namespace {

// Shared by objective / objective_from_cache once A*x is available.
double objective_given_ax(const ProblemInstance& p, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& ax) {
  switch (p.family) {
    case Family::PoissonInverse: {
      double sum = 0.0;
      for (int i = 0; i < p.rows(); ++i) {
        if (!(ax[i] > 0.0)) throw DomainError("poisson objective: <a_i,x> <= 0", i);
        // b_i = 0 rows contribute <a_i,x> (the 0 log 0 = 0 convention)
        sum += (p.b[i] > 0.0 ? p.b[i] * std::log(p.b[i] / ax[i]) - p.b[i] : 0.0) + ax[i];
      }
      return sum;
    }
    case Family::RelativeEntropyRegression: {
      double sum = 0.0;
      for (int i = 0; i < p.rows(); ++i) {
        if (!(ax[i] > 0.0)) throw DomainError("relative-entropy objective: <a_i,x> <= 0", i);
        if (!(p.b[i] > 0.0)) {
          throw DomainError("relative-entropy objective: b_i = 0 with <a_i,x> > 0", i);
        }
        sum += ax[i] * std::log(ax[i] / p.b[i]) - ax[i] + p.b[i];
      }
      return sum;
    }
    case Family::Quadratic:
      return 0.5 * x.dot(ax) - p.b.dot(x);
  }
  return 0.0;
}

// Row weights s with grad f = A' s for the KL families.
Eigen::VectorXd gradient_row_weights(const ProblemInstance& p, const Eigen::VectorXd& ax) {
  Eigen::VectorXd s(p.rows());
  if (p.family == Family::PoissonInverse) {
    for (int i = 0; i < p.rows(); ++i) {
      if (!(ax[i] > 0.0)) throw DomainError("poisson gradient: <a_i,x> <= 0", i);
      s[i] = 1.0 - p.b[i] / ax[i];
    }
  } else {
    for (int i = 0; i < p.rows(); ++i) {
      if (!(ax[i] > 0.0)) throw DomainError("relative-entropy gradient: <a_i,x> <= 0", i);
      if (!(p.b[i] > 0.0)) throw DomainError("relative-entropy gradient: b_i = 0", i);
      s[i] = std::log(ax[i] / p.b[i]);
    }
  }
  return s;
}

}  // namespace

double objective(const ProblemInstance& p, const Eigen::VectorXd& x) {
  if (x.size() != p.dim()) throw DimensionError("objective: x has the wrong length");
  return objective_given_ax(p, x, p.A * x);
}

double objective_from_cache(const ProblemInstance& p, const Eigen::VectorXd& x,
                            const ResidualCache& cache) {
  return objective_given_ax(p, x, cache.value());
}

Eigen::VectorXd partial_gradient_from_ax(const ProblemInstance& p, const Eigen::VectorXd& ax,
                                         int block) {
  const int off = p.partition.offset(block);
  const int len = p.partition.size(block);
  if (p.family == Family::Quadratic) {
    return ax.segment(off, len) - p.b.segment(off, len);
  }
  Eigen::VectorXd s = gradient_row_weights(p, ax);
  return p.A.middleCols(off, len).transpose() * s;
}

Eigen::VectorXd full_gradient_from_ax(const ProblemInstance& p, const Eigen::VectorXd& ax) {
  if (p.family == Family::Quadratic) return ax - p.b;
  return p.A.transpose() * gradient_row_weights(p, ax);
}

Eigen::VectorXd partial_gradient(const ProblemInstance& p, const Eigen::VectorXd& x,
                                 const ResidualCache& cache, int block) {
  (void)x;
  return partial_gradient_from_ax(p, cache.value(), block);
}

Eigen::VectorXd full_gradient(const ProblemInstance& p, const Eigen::VectorXd& x) {
  if (x.size() != p.dim()) throw DimensionError("full_gradient: x has the wrong length");
  return full_gradient_from_ax(p, p.A * x);
}

double relative_smoothness_residual(const ProblemInstance& p,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    double l_scale) {
  const double h = p.family == Family::Quadratic ? 1e-2 : 1e-3;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& x : samples) {
    require_domain(family_reference_kind(p.family), x, "relative_smoothness_residual");
    for (int j = 0; j < p.dim(); ++j) {
      double f2 = fd_second_derivative(p, x, j, h);
      int block = p.partition.block_of(j);
      double lh2 = l_scale * p.reference.weight(block) *
                   ref_curvature(p.reference.kind(block), x[j]);
      worst = std::max(worst, f2 - lh2);
    }
  }
  return worst;
}

}  // namespace bregcd
