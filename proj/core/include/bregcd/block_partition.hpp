#pragma once

#include <Eigen/Core>
#include <vector>

namespace bregcd {

/// Decomposition of an N-vector into n contiguous blocks.
class BlockPartition {
 public:
  /// One block per coordinate (n == N).
  static BlockPartition scalar(int total);
  /// `blocks` equal blocks; `total` must be divisible by `blocks`.
  static BlockPartition uniform(int total, int blocks);

  explicit BlockPartition(std::vector<int> sizes);

  int blocks() const { return static_cast<int>(sizes_.size()); }
  int size(int i) const { return sizes_[i]; }
  int offset(int i) const { return offsets_[i]; }
  int total() const { return total_; }

  /// Block index owning flat coordinate `j`.
  int block_of(int j) const;

  template <typename Vec>
  auto segment(Vec&& v, int i) const {
    return v.segment(offsets_[i], sizes_[i]);
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

}  // namespace bregcd
