#include "bregcd/block_partition.hpp"

#include <numeric>

#include "bregcd/errors.hpp"

namespace bregcd {

BlockPartition BlockPartition::scalar(int total) {
  return BlockPartition(std::vector<int>(static_cast<std::size_t>(total), 1));
}

BlockPartition BlockPartition::uniform(int total, int blocks) {
  if (blocks <= 0 || total % blocks != 0) {
    throw DimensionError("uniform partition requires blocks > 0 dividing the total dimension");
  }
  return BlockPartition(std::vector<int>(static_cast<std::size_t>(blocks), total / blocks));
}

BlockPartition::BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw DimensionError("partition needs at least one block");
  offsets_.resize(sizes_.size());
  int off = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] <= 0) throw DimensionError("block sizes must be positive");
    offsets_[i] = off;
    off += sizes_[i];
  }
  total_ = off;
}

int BlockPartition::block_of(int j) const {
  if (j < 0 || j >= total_) throw DimensionError("flat index outside partition");
  // offsets_ strictly increasing; find the last offset <= j
  int lo = 0, hi = blocks() - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (offsets_[mid] <= j)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace bregcd
