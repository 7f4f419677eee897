#include "bregcd/weighted_reference.hpp"

#include <algorithm>

#include "bregcd/errors.hpp"

namespace bregcd {

WeightedReference WeightedReference::uniform(BlockPartition p, RefKind kind,
                                             Eigen::VectorXd weights) {
  WeightedReference ref{std::move(p), {}, std::move(weights)};
  ref.kinds.assign(static_cast<std::size_t>(ref.partition.blocks()), kind);
  ref.validate();
  return ref;
}

double WeightedReference::theta_min() const {
  double t = 1.0;
  for (int i = 0; i < partition.blocks(); ++i) t = std::min(t, theta(i));
  return t;
}

void WeightedReference::validate() const {
  if (static_cast<int>(kinds.size()) != partition.blocks()) {
    throw DimensionError("weighted reference: one kind per block required");
  }
  if (weights.size() != partition.blocks()) {
    throw DimensionError("weighted reference: one weight per block required");
  }
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw DomainError("weighted reference: weights must be positive", i);
  }
}

double weighted_distance(const WeightedReference& ref, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& x) {
  if (u.size() != ref.partition.total() || x.size() != ref.partition.total()) {
    throw DimensionError("weighted_distance: size mismatch with partition");
  }
  double sum = 0.0;
  for (int i = 0; i < ref.partition.blocks(); ++i) {
    sum += ref.weights[i] *
           bregman_distance(ref.kind(i), ref.partition.segment(u, i), ref.partition.segment(x, i));
  }
  return sum;
}

}  // namespace bregcd
