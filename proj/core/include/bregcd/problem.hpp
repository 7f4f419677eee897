#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "bregcd/block_partition.hpp"
#include "bregcd/regularizer.hpp"
#include "bregcd/weighted_reference.hpp"

namespace bregcd {

/// Composite objective families.
///
/// PoissonInverse            f(x) = sum_i [ b_i log(b_i / <a_i,x>) - b_i + <a_i,x> ]
///                           Burg reference, L_j = ||b||_1.
/// RelativeEntropyRegression f(x) = sum_i [ <a_i,x> log(<a_i,x>/b_i) - <a_i,x> + b_i ]
///                           Shannon reference, L_j = column sum of A.
/// Quadratic                 f(x) = x'Qx/2 - b'x, Euclidean reference,
///                           L_j = spectral norm of the j-th diagonal block.
///                           An extension family with a computable
///                           strong-convexity constant; not one of the two
///                           inverse-problem applications.
enum class Family { PoissonInverse, RelativeEntropyRegression, Quadratic };

const char* family_name(Family family);
RefKind family_reference_kind(Family family);

struct ProblemInstance {
  Family family;
  Eigen::MatrixXd A;  // M x N data matrix; the PSD matrix Q for Quadratic
  Eigen::VectorXd b;  // M-vector; the linear term (N-vector) for Quadratic
  BlockPartition partition;
  Regularizer regularizer;
  WeightedReference reference;

  int rows() const { return static_cast<int>(A.rows()); }
  int dim() const { return static_cast<int>(A.cols()); }
  int blocks() const { return partition.blocks(); }

  /// Nonnegativity of A and b, a positive entry in every row and column
  /// (KL families), symmetry (Quadratic), positive weights.
  void validate() const;

  /// Same data with a different regularizer on every block.
  ProblemInstance with_regularizer(RegKind kind) const;
};

/// Per-block relative-smoothness constants for the family.
Eigen::VectorXd smoothness_constants(Family family, const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b, const BlockPartition& partition);

/// Assembles an instance with scalar blocks (or the given partition),
/// the family's reference kind and smoothness constants attached.
ProblemInstance make_instance(Family family, Eigen::MatrixXd A, Eigen::VectorXd b,
                              RegKind reg = RegKind::NonnegIndicator);
ProblemInstance make_instance(Family family, Eigen::MatrixXd A, Eigen::VectorXd b,
                              BlockPartition partition, RegKind reg);

/// Seeded synthetic instance: A and b entries i.i.d. uniform on [0,1] (A
/// filled row by row, then b), scalar blocks, nonnegativity regularizer.
/// Quadratic draws an M x N factor G the same way and uses
/// Q = G'G/M + diag(0.5 + u), u_j uniform on [0,1], b uniform on [0,1].
/// Identical (family, M, N, seed) give bit-identical instances.
ProblemInstance synth_instance(Family family, int m, int n, std::uint64_t seed);

/// Running product A*x maintained across single-block updates, so a
/// coordinate step costs O(M * N_i) instead of O(M * N).
class ResidualCache {
 public:
  ResidualCache() = default;
  ResidualCache(const Eigen::MatrixXd& A, const Eigen::VectorXd& x) { reset(A, x); }

  void reset(const Eigen::MatrixXd& A, const Eigen::VectorXd& x) { ax_ = A * x; }
  void reset_to(Eigen::VectorXd ax) { ax_ = std::move(ax); }

  /// Applies x_block += delta: ax += A[:, block] * delta.
  void apply_block_update(const Eigen::MatrixXd& A, const BlockPartition& partition, int block,
                          const Eigen::VectorXd& delta);

  const Eigen::VectorXd& value() const { return ax_; }

  /// Relative drift against a fresh A*x (debug aid).
  double drift(const Eigen::MatrixXd& A, const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd ax_;
};

/// Smooth part f(x).  Regularizers here are indicators or zero, so this is
/// the objective value everywhere it is finite.  Throws DomainError when the
/// formula is undefined (<a_i,x> <= 0, or b_i = 0 in relative-entropy terms).
double objective(const ProblemInstance& p, const Eigen::VectorXd& x);
/// Same using a residual cache consistent with x (O(M) for the KL families).
double objective_from_cache(const ProblemInstance& p, const Eigen::VectorXd& x,
                            const ResidualCache& cache);

/// Gradient of f restricted to one block, using the cached residuals.
Eigen::VectorXd partial_gradient(const ProblemInstance& p, const Eigen::VectorXd& x,
                                 const ResidualCache& cache, int block);
Eigen::VectorXd full_gradient(const ProblemInstance& p, const Eigen::VectorXd& x);

/// Gradient pieces given a residual vector A*x directly (accelerated solvers
/// maintain several residual vectors and mix them without forming points).
Eigen::VectorXd partial_gradient_from_ax(const ProblemInstance& p, const Eigen::VectorXd& ax,
                                         int block);
Eigen::VectorXd full_gradient_from_ax(const ProblemInstance& p, const Eigen::VectorXd& ax);

/// max over samples and coordinates of  f''_j(x_j) - L_j h''_j(x_j), with
/// f'' by second central differences.  Nonpositive (up to difference noise)
/// certifies the attached constants.  `l_scale` rescales L for tightness
/// controls.
double relative_smoothness_residual(const ProblemInstance& p,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    double l_scale = 1.0);

}  // namespace bregcd
