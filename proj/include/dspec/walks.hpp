#pragma once

// Walk counts w_k = 1^T A^k 1, the truncated Neumann expansion of Psi, and the
// walk-dominance search for complements with few edges (2s >= n-2).

#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dspec/detail/labeled.hpp"
#include "dspec/errors.hpp"
#include "dspec/extremal.hpp"
#include "dspec/graph.hpp"
#include "dspec/graph_io.hpp"
#include "dspec/phi_psi.hpp"
#include "dspec/report.hpp"
#include "dspec/spectral.hpp"

namespace dspec {

using WalkCount = unsigned __int128;

inline std::string to_string(WalkCount v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

struct WalkProfile {
  std::string graph_id;  // graph6 of the graph
  int depth = 0;         // K
  std::vector<WalkCount> counts;  // w_0 .. w_K

  WalkCount at(int k) const { return counts.at(static_cast<std::size_t>(k)); }
};

namespace detail {

/// Walk counts over an edge list; returns the first k whose count overflows
/// T, or -1. `out` receives w_0 .. w_K.
template <class T>
int walk_counts_raw(int n, std::span<const Edge> edges, int depth, std::vector<T>& out, std::vector<T>& x,
                    std::vector<T>& y) {
  out.assign(static_cast<std::size_t>(depth) + 1, 0);
  x.assign(static_cast<std::size_t>(n), 1);
  y.resize(static_cast<std::size_t>(n));
  out[0] = static_cast<T>(n);
  for (int k = 1; k <= depth; ++k) {
    std::fill(y.begin(), y.end(), 0);
    for (const Edge& e : edges)
      if (__builtin_add_overflow(y[e.u], x[e.v], &y[e.u]) || __builtin_add_overflow(y[e.v], x[e.u], &y[e.v]))
        return k;
    T total = 0;
    for (T v : y)
      if (__builtin_add_overflow(total, v, &total)) return k;
    out[static_cast<std::size_t>(k)] = total;
    x.swap(y);
  }
  return -1;
}

}  // namespace detail

/// Exact w_0 .. w_K by repeated application of A to the all-ones vector.
inline WalkProfile walk_counts(const Graph& h0, int depth) {
  if (depth < 0) throw ContractError("walk depth must be >= 0");
  WalkProfile p;
  p.graph_id = h0.order() <= 62 ? to_graph6(h0) : "";
  p.depth = depth;
  std::vector<WalkCount> x, y;
  const int failed = detail::walk_counts_raw(h0.order(), h0.edges(), depth, p.counts, x, y);
  if (failed >= 0)
    throw OverflowError("walk count w_" + std::to_string(failed) + " overflows 128 bits", failed);
  return p;
}

struct NeumannResult {
  double partial_sum = 0.0;  // sum_{k<=K} w_k / lambda^{k+1}
  double tail_bound = 0.0;   // upper bound on the remainder; +inf when unavailable
  bool tail_valid = false;   // false when lambda <= max degree
  double lower = 0.0;
  double upper = 0.0;
  int depth = 0;
};

/// Truncated series Psi(lambda) = sum_k w_k / lambda^{k+1}. The tail after w_K
/// is bounded by (w_K / lambda^{K+1}) * (D/lambda) / (1 - D/lambda), D the max
/// degree; if lambda <= D only the partial sum is returned.
inline NeumannResult psi_via_neumann(const Graph& h0, double lambda, int depth) {
  if (depth < 0) throw ContractError("walk depth must be >= 0");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw DomainError("lambda must be positive and finite");
  if (h0.size() > 0 && !(lambda > adjacency_spectral_radius(h0).value))
    throw DomainError("lambda must exceed the adjacency spectral radius of h0");
  const WalkProfile p = walk_counts(h0, depth);
  NeumannResult out;
  out.depth = depth;
  double scale = 1.0 / lambda;
  double last = 0.0;
  for (int k = 0; k <= depth; ++k) {
    last = static_cast<double>(p.at(k)) * scale;
    out.partial_sum += last;
    scale /= lambda;
  }
  const double ratio = h0.max_degree() / lambda;
  out.tail_valid = ratio < 1.0;
  out.tail_bound = out.tail_valid ? last * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
  out.lower = out.partial_sum;
  out.upper = out.partial_sum + out.tail_bound;
  return out;
}

enum class DominanceVerdict { IsomorphicToExtremal, StrictlyDominates, Violation };

inline const char* to_string(DominanceVerdict v) {
  switch (v) {
    case DominanceVerdict::IsomorphicToExtremal: return "isomorphic-to-extremal";
    case DominanceVerdict::StrictlyDominates: return "strictly-dominates";
    case DominanceVerdict::Violation: return "violation";
  }
  return "?";
}

struct DominanceReport {
  DominanceVerdict verdict = DominanceVerdict::Violation;
  int first_strict_k = -1;                  // smallest k with w_k(h0) > 2e
  std::optional<std::array<int, 3>> witness;  // x ~ y ~ z in h0
  int failing_k = -1;                       // first k breaking the expected pattern
  WalkProfile h0_profile;
  WalkProfile extremal_profile;
};

inline bool large_s_regime(int n, int s) { return n >= 3 && 2 * s >= n - 2 && s <= n - 1 && s >= 1; }

namespace detail {

inline void require_large_s_regime(int n, int s) {
  if (!large_s_regime(n, s))
    throw ContractError("large-s search needs n >= 3, 1 <= s <= n-1 and s >= (n-2)/2, got n=" + std::to_string(n) +
                        ", s=" + std::to_string(s));
}

/// Pattern check of a profile against w_k = 2e for k >= 1. Returns the first
/// failing k (or -1) and the first strict k.
inline std::pair<int, int> dominance_scan(std::span<const WalkCount> w, int n, int e, bool matching) {
  int failing = -1, strict = -1;
  if (w[0] != static_cast<WalkCount>(n)) failing = 0;
  for (std::size_t k = 1; k < w.size() && failing < 0; ++k) {
    const WalkCount target = static_cast<WalkCount>(2 * e);
    if (w[k] < target || (k == 1 && w[k] != target)) failing = static_cast<int>(k);
    else if (matching ? w[k] != target : (k >= 2 && w[k] == target)) failing = static_cast<int>(k);
    if (strict < 0 && w[k] > target) strict = static_cast<int>(k);
  }
  return {failing, strict};
}

inline std::optional<std::array<int, 3>> path_witness(const Graph& h0) {
  for (int y = 0; y < h0.order(); ++y)
    if (h0.degree(y) >= 2) return std::array<int, 3>{h0.neighbors(y)[0], y, h0.neighbors(y)[1]};
  return std::nullopt;
}

}  // namespace detail

/// Compares w_k(h0) with the walk counts 2e of e disjoint edges. Expected:
/// equality for a perfect matching plus isolated vertices, otherwise w_k > 2e
/// for every k >= 2 with a witness path x ~ y ~ z.
inline DominanceReport walk_dominance_check(const Graph& h0, int n, int s, int depth = 20) {
  detail::require_large_s_regime(n, s);
  const int e = n - 1 - s;
  if (h0.order() != n) throw ContractError("h0 must have n vertices");
  if (static_cast<int>(h0.size()) != e) throw ContractError("h0 must have e = n-1-s edges");
  DominanceReport out;
  out.h0_profile = walk_counts(h0, depth);
  out.extremal_profile = walk_counts(path_union(spec_from_ns(n, s).parts), depth);
  const bool matching = h0.max_degree() <= 1;
  const auto [failing, strict] = detail::dominance_scan(out.h0_profile.counts, n, e, matching);
  out.failing_k = failing;
  out.first_strict_k = strict;
  if (!matching) out.witness = detail::path_witness(h0);
  if (failing >= 0 || (!matching && !out.witness))
    out.verdict = DominanceVerdict::Violation;
  else
    out.verdict = matching ? DominanceVerdict::IsomorphicToExtremal : DominanceVerdict::StrictlyDominates;
  return out;
}

namespace detail {

struct WalkClass {
  std::uint64_t count = 0;
  std::vector<int> representative;  // lexicographically smallest subset
};

struct LargeSState {
  std::map<std::vector<std::uint64_t>, WalkClass> classes;
  std::uint64_t examined = 0;
  std::uint64_t diameter_violations = 0;
  std::vector<Edge> edges;
  std::vector<std::uint64_t> key, x, y;
  MaskGraph h0;

  explicit LargeSState(int n) : h0(n) {}
};

}  // namespace detail

/// Exhaustive search over complements with e = n-1-s edges when 2s >= n-2.
/// Candidates are grouped by walk profile (w_1..w_K with K >= 2n, which fixes
/// Psi and hence rho); the dominance certificate is checked per class and the
/// eigensolver runs once per class as a cross-check.
inline VerificationReport verify_large_s(int n, int s, const VerifyOptions& opt = {}) {
  detail::require_large_s_regime(n, s);
  if (n > 64) throw ContractError("large-s search supports n <= 64");
  const auto start = std::chrono::steady_clock::now();
  const int e = n - 1 - s;
  const int depth = std::max(opt.walk_depth, 2 * n);
  const auto pairs = detail::vertex_pairs(n);
  const double required = detail::binomial(static_cast<double>(pairs.size()), e);
  if (required > opt.cap)
    throw CapExceededError("large-s search over n=" + std::to_string(n) + ", s=" + std::to_string(s) + " needs " +
                               std::to_string(static_cast<unsigned long long>(required)) + " candidates",
                           required, opt.cap);

  VerificationReport rep;
  rep.space = {SearchMode::LargeS, n, s, binom2(n - 1) + s, e,
               "all " + std::to_string(e) + "-edge labeled complements on " + std::to_string(n) +
                   " vertices, walk depth " + std::to_string(depth),
               required};

  auto states = detail::sharded_subsets<detail::LargeSState>(
      static_cast<int>(pairs.size()), e, opt.threads, [&] { return detail::LargeSState(n); },
      [&](detail::LargeSState& st, std::span<const int> subset) {
        ++st.examined;
        st.h0.assign_edges(pairs, subset);
        if (!detail::complement_diameter_at_most_two(st.h0, pairs, subset)) ++st.diameter_violations;
        st.edges.clear();
        for (int i : subset) st.edges.push_back(pairs[i]);
        const int failed = detail::walk_counts_raw(n, st.edges, depth, st.key, st.x, st.y);
        if (failed >= 0) throw OverflowError("walk count exceeds 64 bits at k=" + std::to_string(failed), failed);
        auto it = st.classes.find(st.key);
        if (it == st.classes.end())
          it = st.classes.emplace(st.key, detail::WalkClass{0, {subset.begin(), subset.end()}}).first;
        ++it->second.count;
      });

  std::map<std::vector<std::uint64_t>, detail::WalkClass> classes;
  std::uint64_t diameter_violations = 0;
  for (auto& st : states) {
    rep.examined += st.examined;
    diameter_violations += st.diameter_violations;
    for (auto& [key, cls] : st.classes) {
      auto [it, fresh] = classes.try_emplace(key, cls);
      if (!fresh) {
        it->second.count += cls.count;
        it->second.representative = std::min(it->second.representative, cls.representative);
      }
    }
  }

  const ExtremalSpec spec = spec_from_ns(n, s);
  const Graph extremal_h0 = path_union(spec.parts);
  rep.expected_signature = shape_signature(components(extremal_h0));
  rep.expected_labelings = detail::path_union_labelings(spec.parts);
  const double rho_ext = distance_spectral_radius(complement(extremal_h0), opt.tol).value;
  const double lambda = rho_ext + 1.0;

  CheckTally dominance{"walk-dominance", 0, 0, ""};
  CheckTally certificates{"dominance-certificates", 0, 0, ""};
  CheckTally cross{"eigensolver-cross-check", 0, 0, ""};
  CheckTally bracket{"neumann-bracket", 0, 0, ""};
  detail::MinTracker<std::string> tracker(opt.tie);
  std::map<std::string, MinimizerEntry> by_graph6;

  for (const auto& [key, cls] : classes) {
    const Graph h0 = detail::subset_graph(n, pairs, cls.representative);
    const std::string g6 = to_graph6(h0);
    const bool matching = h0.max_degree() <= 1;
    const std::vector<WalkCount> w(key.begin(), key.end());
    const auto [failing, strict] = detail::dominance_scan(w, n, e, matching);
    dominance.examined += cls.count;
    if (failing >= 0) {
      dominance.violations += cls.count;
      if (dominance.detail.empty()) dominance.detail = g6 + " fails at k=" + std::to_string(failing);
    }
    if (!matching) {
      certificates.examined += cls.count;
      if (strict != 2 || !detail::path_witness(h0)) {
        certificates.violations += cls.count;
        if (certificates.detail.empty()) certificates.detail = g6;
      }
    }

    const SpectralResult r = distance_spectral_radius(complement(h0), opt.tol);
    if (opt.audit) opt.audit(g6, r.value, r.method, r.residual);
    tracker.offer(r.value, g6);
    by_graph6[g6] = {shape_signature(components(h0)), cls.count, r.value, g6};

    // A strict walk gap must show up as a strictly larger rho.
    ++cross.examined;
    if (!matching && !(r.value > rho_ext + opt.tie)) {
      ++cross.violations;
      if (cross.detail.empty()) cross.detail = g6;
    }
    ++bracket.examined;
    const NeumannResult nr = psi_via_neumann(h0, lambda, depth);
    const double exact = psi(h0, lambda).value;
    const double slack = 1e-12 * std::max(1.0, exact);
    if (!nr.tail_valid || exact < nr.lower - slack || exact > nr.upper + slack) {
      ++bracket.violations;
      if (bracket.detail.empty()) bracket.detail = g6;
    }
  }

  rep.rho_min = tracker.best();
  for (const auto& [value, g6] : tracker.near()) rep.minimizers.push_back(by_graph6.at(g6));
  std::sort(rep.minimizers.begin(), rep.minimizers.end(),
            [](const auto& a, const auto& b) { return a.example_h0 < b.example_h0; });
  if (tracker.runner_up()) {
    rep.runner_up_rho = tracker.runner_up()->first;
    rep.runner_up_signature = by_graph6.at(tracker.runner_up()->second).signature;
    rep.gap = *rep.runner_up_rho - rep.rho_min;
    const Graph runner = parse_graph6(tracker.runner_up()->second);
    rep.runner_up_certificate = psi(runner, lambda).value - 1.0;
  }

  rep.verdict = Verdict::Violation;
  if (rep.minimizers.size() != 1) {
    rep.witness = std::to_string(rep.minimizers.size()) + " walk classes tie at the minimum";
  } else if (rep.minimizers.front().signature != rep.expected_signature) {
    rep.witness = "minimizer " + rep.minimizers.front().signature + " (" + rep.minimizers.front().example_h0 +
                  ") differs from " + rep.expected_signature;
  } else if (rep.minimizers.front().labelings != rep.expected_labelings) {
    rep.witness = "class size " + std::to_string(rep.minimizers.front().labelings) + ", expected " +
                  std::to_string(rep.expected_labelings);
  } else if (diameter_violations > 0) {
    rep.witness = "complement with diameter above two";
  } else {
    rep.verdict = Verdict::UniqueBalancedPaths;
    for (const CheckTally* c : {&dominance, &certificates, &cross, &bracket})
      if (c->violations > 0) {
        rep.verdict = Verdict::Violation;
        rep.witness = c->name + ": " + c->detail;
        break;
      }
  }
  rep.checks = {{"diameter-at-most-two", rep.examined, diameter_violations, ""}, dominance, certificates, cross,
                bracket};
  rep.wall_time_seconds = detail::seconds_since(start);
  return rep;
}

}  // namespace dspec
