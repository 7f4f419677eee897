#pragma once

#include <vector>

namespace bregcd {

/// Block-separable convex regularizers.  NonnegIndicator is the indicator of
/// the nonnegative orthant restricted to the block.
enum class RegKind { Zero, NonnegIndicator };

const char* reg_name(RegKind kind);

struct Regularizer {
  std::vector<RegKind> blocks;

  static Regularizer uniform(int n, RegKind kind) {
    return Regularizer{std::vector<RegKind>(static_cast<std::size_t>(n), kind)};
  }
  RegKind block(int i) const { return blocks[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(blocks.size()); }
};

}  // namespace bregcd
