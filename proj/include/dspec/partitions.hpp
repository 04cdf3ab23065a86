#pragma once

// Restricted integer partitions, emitted as non-decreasing part lists.

#include <vector>

namespace dspec {

namespace detail {

template <class Visit>
void partitions_rec(int remaining, int parts_left, int min_part, std::vector<int>& buf, Visit& visit) {
  if (parts_left == 1) {
    if (remaining >= min_part) {
      buf.push_back(remaining);
      visit(static_cast<const std::vector<int>&>(buf));
      buf.pop_back();
    }
    return;
  }
  for (int part = min_part; part * parts_left <= remaining; ++part) {
    buf.push_back(part);
    partitions_rec(remaining - part, parts_left - 1, part, buf, visit);
    buf.pop_back();
  }
}

}  // namespace detail

/// Every partition of `total` into exactly `count` parts, each >= min_part.
template <class Visit>
void for_each_partition_exact(int total, int count, int min_part, Visit&& visit) {
  std::vector<int> buf;
  if (count == 0) {
    if (total == 0) visit(static_cast<const std::vector<int>&>(buf));
    return;
  }
  if (count < 0 || min_part < 1) return;
  detail::partitions_rec(total, count, min_part, buf, visit);
}

/// Every partition of `total` into parts >= min_part, any number of parts.
/// total == 0 yields the empty partition once.
template <class Visit>
void for_each_partition(int total, int min_part, Visit&& visit) {
  if (total == 0) {
    const std::vector<int> empty;
    visit(empty);
    return;
  }
  for (int count = 1; count * min_part <= total; ++count) for_each_partition_exact(total, count, min_part, visit);
}

}  // namespace dspec
