#pragma once

#include <vector>

#include "ewagg/types.hpp"

namespace ewagg {

/// Contiguous blocks B_j = {T_j + 1, ..., T_{j+1}} (1-based) with
/// 0 = T_1 < ... < T_{J+1} = n.
class BlockPartition {
public:
    /// Throws std::invalid_argument unless boundaries start at 0 and are
    /// strictly increasing.
    explicit BlockPartition(std::vector<Index> boundaries);
    static BlockPartition single(Index n);

    const std::vector<Index>& boundaries() const { return boundaries_; }
    std::size_t block_count() const { return boundaries_.size() - 1; }
    Index dimension() const { return boundaries_.back(); }
    /// 0-based start offset and length of block j (0-based j).
    Index block_begin(std::size_t j) const { return boundaries_[j]; }
    Index block_size(std::size_t j) const { return boundaries_[j + 1] - boundaries_[j]; }
    std::size_t block_of(Index i) const;

private:
    std::vector<Index> boundaries_;
};

/// Largest integer strictly smaller than x.
long long strict_floor(double x);

/// Weakly geometric blocks: T_1 = 0, T_2 = nu, then
/// T_j = T_{j-1} + strict_floor(nu rho (1 + rho)^{j-3}) for j >= 3 with
/// rho = nu^{-1/3}. The first T_j >= n is reset to n and ends the sequence.
/// Zero increments (possible for nu = 1) are skipped so no block is empty.
BlockPartition build_partition(Index n, int nu);

/// The untruncated boundary sequence T_1..T_count of the same recursion.
std::vector<long long> partition_boundaries(int nu, std::size_t count);

}  // namespace ewagg
