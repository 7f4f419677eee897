#pragma once

#include <Eigen/Core>
#include <vector>

#include "bregcd/block_partition.hpp"
#include "bregcd/reference.hpp"

namespace bregcd {

/// H(x) = sum_i L_i h_i(x_i): per-block reference functions scaled by the
/// relative-smoothness constants.  Carries the geometry every solver and
/// stationarity measure works in.
struct WeightedReference {
  BlockPartition partition;
  std::vector<RefKind> kinds;  // one per block
  Eigen::VectorXd weights;     // L_i > 0, one per block

  static WeightedReference uniform(BlockPartition p, RefKind kind, Eigen::VectorXd weights);

  RefKind kind(int i) const { return kinds[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weights[i]; }
  double theta(int i) const { return make_reference(kind(i)).theta; }
  double theta_min() const;
  /// The sufficient-descent stepsize (1 + theta_i) / (2 L_i).
  double alpha_default(int i) const { return (1.0 + theta(i)) / (2.0 * weights[i]); }

  void validate() const;
};

/// D_H(u, x) = sum_i L_i D_h(u_i, x_i).
double weighted_distance(const WeightedReference& ref, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& x);

}  // namespace bregcd
