#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dspec/errors.hpp"
#include "dspec/graph.hpp"

namespace dspec {

inline constexpr long long binom2(long long n) { return n * (n - 1) / 2; }

/// Parameters of the conjectured minimizer among connected graphs with m edges:
/// C(n-1,2) < m <= C(n,2), s = m - C(n-1,2), and the balanced split of n
/// vertices into c = s+1 paths (r parts of q+1, c-r parts of q).
///
/// s == 0 is the degenerate case m = C(n-1,2) whose minimizer is K_{n-1}; it
/// is only reachable through spec_from_ns, never from params_from_m.
struct ExtremalSpec {
  long long m = 0;
  int n = 0;
  int s = 0;
  int c = 0;
  int q = 0;
  int r = 0;
  std::vector<int> parts;  // non-decreasing

  bool complete_graph_case() const noexcept { return s == 0; }
  int complement_edges() const noexcept { return n - 1 - s; }
};

/// c parts, each floor(total/c) or ceil(total/c), non-decreasing.
inline std::vector<int> balanced_partition(int total, int count) {
  if (count < 1) throw DomainError("balanced partition needs at least one part");
  if (total < count) throw DomainError("cannot split " + std::to_string(total) + " into " + std::to_string(count) +
                                       " parts of size >= 1");
  const int q = total / count, r = total % count;
  std::vector<int> parts(static_cast<std::size_t>(count - r), q);
  parts.insert(parts.end(), static_cast<std::size_t>(r), q + 1);
  return parts;
}

inline bool is_balanced(std::span<const int> parts) {
  if (parts.empty()) return true;
  const auto [lo, hi] = std::minmax_element(parts.begin(), parts.end());
  return *hi - *lo <= 1;
}

inline ExtremalSpec spec_from_ns(int n, int s) {
  if (n < 2) throw DomainError("n must be >= 2");
  if (s < 0 || s > n - 1) throw DomainError("s must lie in [0, n-1]");
  ExtremalSpec spec;
  spec.n = n;
  spec.s = s;
  spec.m = binom2(n - 1) + s;
  spec.c = s + 1;
  spec.q = n / spec.c;
  spec.r = n - spec.q * spec.c;
  spec.parts = balanced_partition(n, spec.c);
  return spec;
}

inline ExtremalSpec params_from_m(long long m) {
  if (m < 3) throw DomainError("m must be >= 3, got " + std::to_string(m));
  // Float estimate of ceil((1 + sqrt(8m+1))/2), then settle by exact comparison.
  long long n = static_cast<long long>(std::ceil((1.0 + std::sqrt(8.0 * static_cast<double>(m) + 1.0)) / 2.0));
  while (n > 2 && binom2(n - 1) >= m) --n;
  while (binom2(n) < m) ++n;
  if (n > std::numeric_limits<int>::max()) throw DomainError("m too large");
  return spec_from_ns(static_cast<int>(n), static_cast<int>(m - binom2(n - 1)));
}

/// Disjoint union of paths of the given orders on consecutive labels.
inline Graph path_union(std::span<const int> parts) {
  std::vector<Edge> edges;
  int offset = 0;
  for (int k : parts) {
    if (k < 1) throw DomainError("path order must be >= 1");
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(offset + i, offset + i + 1);
    offset += k;
  }
  return Graph(offset, std::move(edges));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

/// Complement of the balanced path union; K_{n-1} when s == 0.
inline Graph build_extremal_graph(const ExtremalSpec& spec) {
  if (spec.complete_graph_case()) return complete_graph(spec.n - 1);
  return complement(path_union(spec.parts));
}

inline long long square_sum(std::span<const int> parts) {
  long long q = 0;
  for (int k : parts) q += static_cast<long long>(k) * k;
  return q;
}

/// Moves one vertex from part i to part j: (k_i, k_j) -> (k_i - 1, k_j + 1).
inline std::vector<int> rebalance_step(std::span<const int> parts, std::size_t i, std::size_t j) {
  if (i >= parts.size() || j >= parts.size() || i == j) throw ContractError("rebalance indices out of range");
  for (int k : parts)
    if (k < 2) throw ContractError("rebalance needs every part >= 2");
  if (parts[i] < parts[j] + 2)
    throw ContractError("rebalance needs parts[i] >= parts[j] + 2 (" + std::to_string(parts[i]) + " vs " +
                        std::to_string(parts[j]) + ")");
  std::vector<int> out(parts.begin(), parts.end());
  --out[i];
  ++out[j];
  return out;
}

/// Step between the first largest and the first smallest part.
inline std::vector<int> rebalance_step(std::span<const int> parts) {
  if (parts.empty()) throw ContractError("rebalance of an empty list");
  const auto hi = static_cast<std::size_t>(std::max_element(parts.begin(), parts.end()) - parts.begin());
  const auto lo = static_cast<std::size_t>(std::min_element(parts.begin(), parts.end()) - parts.begin());
  return rebalance_step(parts, hi, lo);
}

struct RebalanceTrace {
  std::vector<std::vector<int>> states;  // states.front() is the input, states.back() the fixpoint
  std::vector<long long> square_sums;
};

inline RebalanceTrace rebalance_to_fixpoint(std::span<const int> parts) {
  RebalanceTrace trace;
  trace.states.emplace_back(parts.begin(), parts.end());
  trace.square_sums.push_back(square_sum(parts));
  while (!is_balanced(trace.states.back())) {
    trace.states.push_back(rebalance_step(trace.states.back()));
    trace.square_sums.push_back(square_sum(trace.states.back()));
  }
  return trace;
}

/// True iff balanced_partition(n1, c) <= balanced_partition(n2, c) entrywise
/// (both sorted non-decreasing). Holds whenever n1 <= n2.
inline bool partition_dominance(int n1, int n2, int c) {
  if (c < 1 || n1 < c || n2 < c) throw DomainError("partition_dominance needs c >= 1 and n1, n2 >= c");
  const auto a = balanced_partition(n1, c), b = balanced_partition(n2, c);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

}  // namespace dspec
