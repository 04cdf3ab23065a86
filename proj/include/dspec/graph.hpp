#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dspec/errors.hpp"

namespace dspec {

/// Unordered vertex pair, stored with u <= v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

/// Labeled simple graph on vertices 0..order-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order) : Graph(order, {}) {}

  Graph(int order, std::vector<Edge> edges) : n_(order), edges_(std::move(edges)) {
    if (order < 0) throw ContractError("graph order must be non-negative");
    for (const Edge& e : edges_) {
      if (e.u < 0 || e.v >= n_)
        throw ContractError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "} has an endpoint outside [0, " + std::to_string(n_) + ")");
      if (e.u == e.v) throw ContractError("self-loop at vertex " + std::to_string(e.u));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw ContractError("duplicate edge {" + std::to_string(dup->u) + "," + std::to_string(dup->v) + "}");

    adj_.assign(static_cast<std::size_t>(n_), {});
    matrix_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
    for (const Edge& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
      matrix_[index(e.u, e.v)] = 1;
      matrix_[index(e.v, e.u)] = 1;
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());
  }

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    return matrix_[index(u, v)] != 0;
  }

  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  int max_degree() const {
    int best = 0;
    for (const auto& row : adj_) best = std::max(best, static_cast<int>(row.size()));
    return best;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint8_t> matrix_;
};

inline Graph complement(const Graph& g) {
  const int n = g.order();
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2 - g.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return Graph(n, std::move(out));
}

/// Subgraph induced on `vertices`, relabeled 0..k-1 in the given order.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> label(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) label[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (label[e.u] >= 0 && label[e.v] >= 0) out.emplace_back(label[e.u], label[e.v]);
  return Graph(static_cast<int>(vertices.size()), std::move(out));
}

enum class ShapeKind { Path, Cycle, Other };

struct ComponentShape {
  ShapeKind kind = ShapeKind::Other;
  int size = 0;

  auto operator<=>(const ComponentShape&) const = default;

  // "P4", "C3", "O5"
  std::string to_string() const {
    const char tag = kind == ShapeKind::Path ? 'P' : kind == ShapeKind::Cycle ? 'C' : 'O';
    return tag + std::to_string(size);
  }
};

struct Component {
  std::vector<int> vertices;  // ascending
  ComponentShape shape;
};

/// Connected components ordered by smallest vertex. A 2-regular component is a
/// Cycle; otherwise an acyclic one with max degree <= 2 is a Path; else Other.
inline std::vector<Component> components(const Graph& g) {
  const int n = g.order();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<Component> out;
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    Component comp;
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.vertices.push_back(v);
      for (int w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());

    const int size = static_cast<int>(comp.vertices.size());
    long long degree_sum = 0;
    int max_deg = 0;
    bool two_regular = true;
    for (int v : comp.vertices) {
      degree_sum += g.degree(v);
      max_deg = std::max(max_deg, g.degree(v));
      two_regular = two_regular && g.degree(v) == 2;
    }
    const long long edges = degree_sum / 2;
    if (two_regular)
      comp.shape = {ShapeKind::Cycle, size};
    else if (edges == size - 1 && max_deg <= 2)
      comp.shape = {ShapeKind::Path, size};
    else
      comp.shape = {ShapeKind::Other, size};
    out.push_back(std::move(comp));
  }
  return out;
}

/// Sorted multiset of component shapes joined by '+', e.g. "C3+P4+P4".
inline std::string shape_signature(const std::vector<Component>& comps) {
  std::vector<ComponentShape> shapes;
  for (const auto& c : comps) shapes.push_back(c.shape);
  std::sort(shapes.begin(), shapes.end(), [](const ComponentShape& a, const ComponentShape& b) {
    auto rank = [](ShapeKind k) { return k == ShapeKind::Cycle ? 0 : k == ShapeKind::Path ? 1 : 2; };
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
    return a.size < b.size;
  });
  std::string out;
  for (const auto& s : shapes) {
    if (!out.empty()) out += '+';
    out += s.to_string();
  }
  return out;
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || components(g).size() == 1; }

/// Hop distances. Unreachable pairs hold std::nullopt, never a sentinel value.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int order)
      : n_(order), d_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order)) {
    for (int v = 0; v < order; ++v) d_[idx(v, v)] = 0;
  }

  int order() const noexcept { return n_; }
  std::optional<int> at(int u, int v) const { return d_.at(idx(u, v)); }
  void set(int u, int v, std::optional<int> value) { d_.at(idx(u, v)) = value; }

  bool all_reachable() const {
    return std::all_of(d_.begin(), d_.end(), [](const auto& x) { return x.has_value(); });
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t idx(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<std::optional<int>> d_;
};

inline DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.order();
  DistanceMatrix out(n);
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> queue(static_cast<std::size_t>(n));
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = src;
    while (head < tail) {
      const int v = queue[head++];
      for (int w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
    }
    for (int v = 0; v < n; ++v)
      out.set(src, v, dist[v] >= 0 ? std::optional<int>(dist[v]) : std::nullopt);
  }
  return out;
}

inline int diameter(const Graph& g) {
  if (g.order() == 0) throw ContractError("diameter of the empty graph is undefined");
  const DistanceMatrix d = all_pairs_distances(g);
  int best = 0;
  for (int u = 0; u < g.order(); ++u)
    for (int v = 0; v < g.order(); ++v) {
      const auto x = d.at(u, v);
      if (!x) throw ContractError("diameter requires a connected graph");
      best = std::max(best, *x);
    }
  return best;
}

/// Which hypothesis admitted the identity D(complement) = J - I + A(h0).
enum class Justification {
  CyclePathUnion,  // h0 is a union of >= 2 paths/cycles on n >= 4 vertices
  DiameterTwo,     // only diam(complement(h0)) <= 2 was established
};

struct ComplementDistances {
  DistanceMatrix matrix;
  Justification basis = Justification::DiameterTwo;
};

inline bool is_cycle_path_union(const std::vector<Component>& comps) {
  return std::all_of(comps.begin(), comps.end(),
                     [](const Component& c) { return c.shape.kind != ShapeKind::Other; });
}

/// Distance matrix of complement(h0) read off as J - I + A(h0). Throws
/// ContractError naming the first h0 edge {u,v} with no vertex outside
/// N[u] u N[v], i.e. the first pair at distance > 2 in the complement.
inline ComplementDistances distance_matrix_via_complement(const Graph& h0) {
  const int n = h0.order();
  for (const Edge& e : h0.edges()) {
    bool witness = false;
    for (int w = 0; w < n && !witness; ++w)
      witness = w != e.u && w != e.v && !h0.has_edge(w, e.u) && !h0.has_edge(w, e.v);
    if (!witness)
      throw ContractError("complement has diameter > 2: vertices " + std::to_string(e.u) + " and " +
                          std::to_string(e.v) + " have no common neighbour");
  }

  ComplementDistances out{DistanceMatrix(n), Justification::DiameterTwo};
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) out.matrix.set(u, v, h0.has_edge(u, v) ? 2 : 1);

  const auto comps = components(h0);
  if (n >= 4 && comps.size() >= 2 && is_cycle_path_union(comps)) out.basis = Justification::CyclePathUnion;
  return out;
}

}  // namespace dspec
