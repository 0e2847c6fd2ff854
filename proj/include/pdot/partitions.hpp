#pragma once

// Brute-force counts for partitions with designated summands.
//
// In a designated-summand partition exactly one copy of each distinct part
// size is tagged, so a shape with multiplicities m_1..m_k gives prod m_i
// designated partitions, each carrying k tagged parts.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pdot/numeric.hpp"
#include "pdot/series.hpp"

namespace pdot::partitions {

struct PartitionProfile {
  /// (size, multiplicity), sizes strictly decreasing.
  std::vector<std::pair<int, int>> parts;

  int total() const;
  int distinct_sizes() const { return static_cast<int>(parts.size()); }
  /// Number of ways to tag one copy of each size: prod multiplicities.
  BigInt designations() const;

  bool operator==(const PartitionProfile&) const = default;
};

/// Calls visit once per partition of n (odd parts only when odd_only).
/// Shapes arrive ordered by largest part, ascending.
void for_each_partition(int n, bool odd_only, const std::function<void(const PartitionProfile&)>& visit);

std::vector<PartitionProfile> enumerate_partitions(int n, bool odd_only);

BigInt pd(int n);
BigInt pd_t(int n);
BigInt pdo(int n);
BigInt pdo_t(int n);

/// q f_2 f_3^2 f_12^2 / (f_1^2 f_6).
series::TruncSeries pdo_t_series(std::size_t order, series::Domain domain = series::Domain::exact());

}  // namespace pdot::partitions
