#include "pdot/partitions.hpp"

#include <stdexcept>

namespace pdot::partitions {

namespace {

// Fills `prefix` (sizes decreasing) with partitions of `remaining` into parts
// no larger than `max_part`.
void recurse(int remaining, int max_part, int step, PartitionProfile& prefix,
             const std::function<void(const PartitionProfile&)>& visit) {
  if (remaining == 0) {
    visit(prefix);
    return;
  }
  for (int size = max_part; size >= 1; size -= step) {
    if (size > remaining) continue;
    for (int mult = remaining / size; mult >= 1; --mult) {
      prefix.parts.emplace_back(size, mult);
      recurse(remaining - size * mult, size - step, step, prefix, visit);
      prefix.parts.pop_back();
    }
  }
}

BigInt tally(int n, bool odd_only, bool count_tags) {
  BigInt total = 0;
  for_each_partition(n, odd_only, [&](const PartitionProfile& p) {
    const BigInt ways = p.designations();
    total += count_tags ? BigInt(ways * p.distinct_sizes()) : ways;
  });
  return total;
}

}  // namespace

int PartitionProfile::total() const {
  int s = 0;
  for (const auto& [size, mult] : parts) s += size * mult;
  return s;
}

BigInt PartitionProfile::designations() const {
  BigInt w = 1;
  for (const auto& [size, mult] : parts) w *= mult;
  return w;
}

void for_each_partition(int n, bool odd_only, const std::function<void(const PartitionProfile&)>& visit) {
  if (n < 0) throw std::invalid_argument("for_each_partition: n must be >= 0");
  PartitionProfile prefix;
  if (n == 0) {
    visit(prefix);
    return;
  }
  const int step = odd_only ? 2 : 1;
  for (int largest = 1; largest <= n; largest += step) {
    for (int mult = n / largest; mult >= 1; --mult) {
      prefix.parts.emplace_back(largest, mult);
      recurse(n - largest * mult, largest - step, step, prefix, visit);
      prefix.parts.pop_back();
    }
  }
}

std::vector<PartitionProfile> enumerate_partitions(int n, bool odd_only) {
  std::vector<PartitionProfile> out;
  for_each_partition(n, odd_only, [&](const PartitionProfile& p) { out.push_back(p); });
  return out;
}

BigInt pd(int n) { return tally(n, false, false); }
BigInt pd_t(int n) { return tally(n, false, true); }
BigInt pdo(int n) { return tally(n, true, false); }
BigInt pdo_t(int n) { return tally(n, true, true); }

series::TruncSeries pdo_t_series(std::size_t order, series::Domain domain) {
  if (order == 0) return series::TruncSeries(0, domain);
  const auto body = series::euler_quotient({{2, 1}, {3, 2}, {12, 2}, {1, -2}, {6, -1}}, order - 1, domain);
  return series::shift(body, 1);
}

}  // namespace pdot::partitions
