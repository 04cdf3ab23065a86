#pragma once

// Machinery shared by the labeled-complement engines: pair indexing, sharded
// e-subset enumeration, bitmask graphs and an associative minimum tracker.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "dspec/errors.hpp"
#include "dspec/graph.hpp"
#include "dspec/spectral.hpp"

namespace dspec::detail {

/// Vertex pairs (u < v) in lexicographic order.
inline std::vector<Edge> vertex_pairs(int n) {
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

inline double binomial(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= static_cast<int>(k); ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Calls visit(state, subset) for every `choose`-subset of [0, universe), each
/// subset ascending. Work is sharded by the subset's first element; returns
/// one State per worker for the caller to merge.
template <class State, class MakeState, class Visit>
std::vector<State> sharded_subsets(int universe, int choose, int threads, MakeState make_state, Visit visit) {
  const int workers = std::max(1, std::min(resolve_threads(threads), std::max(1, universe - choose + 1)));
  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) states.push_back(make_state());

  if (choose == 0) {
    visit(states[0], std::span<const int>());
    return states;
  }
  if (choose > universe) return states;

  std::atomic<int> next_first{0};
  auto run = [&](State& state) {
    std::vector<int> idx(static_cast<std::size_t>(choose));
    for (int first = next_first++; first <= universe - choose; first = next_first++) {
      idx[0] = first;
      for (int i = 1; i < choose; ++i) idx[i] = first + i;
      while (true) {
        visit(state, std::span<const int>(idx));
        int i = choose - 1;
        while (i >= 1 && idx[i] == universe - choose + i) --i;
        if (i < 1) break;
        ++idx[i];
        for (int j = i + 1; j < choose; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  };

  if (workers == 1) {
    run(states[0]);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back([&, w] { run(states[w]); });
  }
  return states;
}

/// Adjacency bitmasks of a graph on at most 64 vertices.
struct MaskGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;

  explicit MaskGraph(int order = 0) : n(order), adj(static_cast<std::size_t>(order), 0) {}

  void assign_edges(std::span<const Edge> pairs, std::span<const int> subset) {
    std::fill(adj.begin(), adj.end(), 0);
    for (int i : subset) {
      const Edge& e = pairs[i];
      adj[e.u] |= std::uint64_t{1} << e.v;
      adj[e.v] |= std::uint64_t{1} << e.u;
    }
  }

  std::uint64_t full() const { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

  void complement_of(const MaskGraph& h) {
    n = h.n;
    adj.resize(h.adj.size());
    const std::uint64_t all = h.full();
    for (int v = 0; v < n; ++v) adj[v] = all & ~h.adj[v] & ~(std::uint64_t{1} << v);
  }

  int degree(int v) const { return std::popcount(adj[v]); }
  int max_degree() const {
    int best = 0;
    for (int v = 0; v < n; ++v) best = std::max(best, degree(v));
    return best;
  }
};

/// BFS hop counts into `out`; false when the graph is disconnected.
inline bool distance_matrix(const MaskGraph& g, DenseMatrix& out, int* max_distance = nullptr) {
  const std::uint64_t all = g.full();
  int worst = 0;
  for (int src = 0; src < g.n; ++src) {
    std::uint64_t seen = std::uint64_t{1} << src, frontier = seen;
    out(src, src) = 0.0;
    int d = 0;
    while (frontier) {
      ++d;
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= g.adj[std::countr_zero(f)];
      next &= ~seen;
      for (std::uint64_t b = next; b; b &= b - 1) out(src, std::countr_zero(b)) = d;
      if (next) worst = std::max(worst, d);
      seen |= next;
      frontier = next;
    }
    if (seen != all) return false;
  }
  if (max_distance) *max_distance = worst;
  return true;
}

/// True when every h0 edge has a vertex outside N[u] u N[v] (diam(complement) <= 2).
inline bool complement_diameter_at_most_two(const MaskGraph& h0, std::span<const Edge> pairs,
                                            std::span<const int> subset) {
  const std::uint64_t all = h0.full();
  for (int i : subset) {
    const Edge& e = pairs[i];
    const std::uint64_t blocked = h0.adj[e.u] | h0.adj[e.v] | (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
    if ((all & ~blocked) == 0) return false;
  }
  return true;
}

inline Graph subset_graph(int n, std::span<const Edge> pairs, std::span<const int> subset) {
  std::vector<Edge> edges;
  for (int i : subset) edges.push_back(pairs[i]);
  return Graph(n, std::move(edges));
}

/// Keeps every key whose value lies within `tie` of the running minimum, and
/// the smallest value (with key) beyond that window. Merging is associative.
template <class Key>
class MinTracker {
 public:
  explicit MinTracker(double tie = 1e-9) : tie_(tie) {}

  void offer(double value, const Key& key) {
    if (value < best_) {
      best_ = value;
      auto keep = std::partition(near_.begin(), near_.end(),
                                 [&](const auto& entry) { return entry.first <= best_ + tie_; });
      for (auto it = keep; it != near_.end(); ++it) consider_runner_up(it->first, it->second);
      near_.erase(keep, near_.end());
    }
    if (value <= best_ + tie_)
      near_.emplace_back(value, key);
    else
      consider_runner_up(value, key);
  }

  void merge(const MinTracker& other) {
    for (const auto& [v, k] : other.near_) offer(v, k);
    if (other.runner_up_) offer(other.runner_up_->first, other.runner_up_->second);
  }

  double best() const { return best_; }
  const std::vector<std::pair<double, Key>>& near() const { return near_; }
  const std::optional<std::pair<double, Key>>& runner_up() const { return runner_up_; }

 private:
  void consider_runner_up(double value, const Key& key) {
    if (!runner_up_ || value < runner_up_->first || (value == runner_up_->first && key < runner_up_->second))
      runner_up_ = std::make_pair(value, key);
  }

  double tie_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, Key>> near_;
  std::optional<std::pair<double, Key>> runner_up_;
};

/// Labeled copies of a disjoint union of paths on sum(parts) vertices:
/// n! / (prod over orders of mult! * 2^(number of parts >= 2)).
/// Saturates at UINT64_MAX.
inline std::uint64_t path_union_labelings(std::span<const int> parts) {
  constexpr unsigned __int128 limit = std::numeric_limits<std::uint64_t>::max();
  constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();
  std::map<int, int> mult;
  int n = 0;
  for (int k : parts) {
    ++mult[k];
    n += k;
  }
  // Multinomial n! / prod k! as a product of binomials, then k!/2 per path.
  unsigned __int128 count = 1;
  int remaining = n;
  for (int k : parts) {
    unsigned __int128 b = 1;
    for (int i = 1; i <= k; ++i) b = b * static_cast<unsigned>(remaining - k + i) / static_cast<unsigned>(i);
    remaining -= k;
    for (int i = 3; i <= k; ++i) b *= static_cast<unsigned>(i);
    if (b > limit * 720) return saturated;
    count *= b;
    if (count > limit * 720 * 720) return saturated;
  }
  for (const auto& [k, c] : mult)
    for (int i = 2; i <= c; ++i) count /= static_cast<unsigned>(i);
  return count > limit ? saturated : static_cast<std::uint64_t>(count);
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace dspec::detail
