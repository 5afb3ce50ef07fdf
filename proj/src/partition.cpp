#include "ewagg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ewagg {

BlockPartition::BlockPartition(std::vector<Index> boundaries) : boundaries_(std::move(boundaries)) {
    if (boundaries_.size() < 2 || boundaries_.front() != 0)
        throw std::invalid_argument("partition boundaries must start at 0 and contain at least one block");
    for (std::size_t j = 1; j < boundaries_.size(); ++j)
        if (boundaries_[j] <= boundaries_[j - 1])
            throw std::invalid_argument("partition boundaries must be strictly increasing");
}

BlockPartition BlockPartition::single(Index n) { return BlockPartition({0, n}); }

std::size_t BlockPartition::block_of(Index i) const {
    if (i < 0 || i >= dimension()) throw std::out_of_range("index outside the partition");
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), i);
    return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

long long strict_floor(double x) {
    const double f = std::floor(x);
    return static_cast<long long>(f == x ? f - 1.0 : f);
}

namespace {

// Increment T_j - T_{j-1} for j >= 3.
long long increment(int nu, int j) {
    const double rho = std::pow(static_cast<double>(nu), -1.0 / 3.0);
    return strict_floor(nu * rho * std::pow(1.0 + rho, j - 3));
}

}  // namespace

std::vector<long long> partition_boundaries(int nu, std::size_t count) {
    if (nu < 1) throw std::invalid_argument("partition needs nu >= 1");
    std::vector<long long> t;
    if (count >= 1) t.push_back(0);
    if (count >= 2) t.push_back(nu);
    for (std::size_t j = 3; j <= count; ++j) t.push_back(t.back() + increment(nu, static_cast<int>(j)));
    return t;
}

BlockPartition build_partition(Index n, int nu) {
    if (nu < 1) throw std::invalid_argument("partition needs nu >= 1");
    if (n < 2) throw std::invalid_argument("partition needs n >= 2");
    std::vector<Index> b{0};
    long long t = nu;
    for (int j = 3; b.back() < n; ++j) {
        if (t > b.back()) b.push_back(static_cast<Index>(std::min<long long>(t, n)));
        t += increment(nu, j);
    }
    return BlockPartition(std::move(b));
}

}  // namespace ewagg
