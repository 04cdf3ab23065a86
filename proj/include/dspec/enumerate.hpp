#pragma once

// Two verification engines for the balanced-path minimizer: a search over all
// cycle/path complement configurations (secular route), and an exhaustive
// structure-free search over labeled complements (eigensolver route).

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "dspec/detail/labeled.hpp"
#include "dspec/errors.hpp"
#include "dspec/extremal.hpp"
#include "dspec/graph.hpp"
#include "dspec/graph_io.hpp"
#include "dspec/partitions.hpp"
#include "dspec/phi_psi.hpp"
#include "dspec/report.hpp"
#include "dspec/spectral.hpp"

namespace dspec {

inline bool structured_regime(int n, int s) { return s >= 1 && 2 * s < n - 2; }

inline void require_structured_regime(int n, int s) {
  if (!structured_regime(n, s))
    throw ContractError("structured search needs 1 <= s < (n-2)/2, got n=" + std::to_string(n) +
                        ", s=" + std::to_string(s));
}

/// Visits every configuration: cycles of length >= 3 on N_c vertices and
/// exactly s+1 paths of order >= 2 on the rest, N_c in {0} u [3, n-2(s+1)].
/// Each multiset is emitted once, sorted.
template <class Visit>
void for_each_config(int n, int s, Visit&& visit) {
  require_structured_regime(n, s);
  const int path_count = s + 1;
  const int max_cycle_vertices = n - 2 * path_count;
  for (int nc = 0; nc <= max_cycle_vertices; ++nc) {
    if (nc == 1 || nc == 2) continue;
    for_each_partition(nc, 3, [&](const std::vector<int>& cycles) {
      for_each_partition_exact(n - nc, path_count, 2, [&](const std::vector<int>& paths) {
        visit(ComplementConfig(cycles, paths));
      });
    });
  }
}

inline std::vector<ComplementConfig> enumerate_configs(int n, int s) {
  std::vector<ComplementConfig> out;
  for_each_config(n, s, [&](ComplementConfig c) { out.push_back(std::move(c)); });
  return out;
}

namespace detail {

/// Index of the strict minimum of `pool` under compare_rho, or nullopt if
/// some pair cannot be ordered. `resolved` counts pairs decided by a route
/// other than plain root difference.
inline std::optional<std::size_t> tournament(const std::vector<ComplementConfig>& pool, const CompareOptions& opt,
                                             std::uint64_t& resolved, std::string& failure) {
  if (pool.empty()) return std::nullopt;
  std::size_t champion = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const auto r = compare_rho(pool[i], pool[champion], opt);
    if (r.route == ComparisonRoute::Unresolved || r.order == Ordering::Equal) {
      failure = "cannot order " + pool[i].to_string() + " against " + pool[champion].to_string();
      return std::nullopt;
    }
    if (r.order == Ordering::Less) champion = i;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == champion) continue;
    const auto r = compare_rho(pool[i], pool[champion], opt);
    if (r.route == ComparisonRoute::Unresolved || r.order != Ordering::Greater) {
      failure = pool[i].to_string() + " is not strictly above " + pool[champion].to_string();
      return std::nullopt;
    }
    if (r.route != ComparisonRoute::RootDifference) ++resolved;
  }
  return champion;
}

}  // namespace detail

/// Secular rho for every configuration of (n, s). Near-ties within opt.tie are
/// ordered by the comparison principle (path-excess form when needed). Also
/// tallies the balanced-paths-per-cycle-group check and the cyclic-vs-balanced
/// Psi check at rho_bal + 1, 3 and n + 2.
inline VerificationReport verify_structured(int n, int s, const VerifyOptions& opt = {}) {
  require_structured_regime(n, s);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.space.mode = SearchMode::Structured;
  rep.space.n = n;
  rep.space.s = s;
  rep.space.m = binom2(n - 1) + s;
  rep.space.complement_edges = n - 1 - s;
  rep.space.constraints = "t>=0, cycle lengths>=3, path count=" + std::to_string(s + 1) + ", path orders>=2";

  const auto configs = enumerate_configs(n, s);
  rep.space.candidate_estimate = static_cast<double>(configs.size());
  std::vector<double> rho(configs.size());
  detail::MinTracker<std::size_t> tracker(opt.tie);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const SpectralResult r = rho_via_secular(configs[i], opt.tol);
    rho[i] = r.value;
    tracker.offer(r.value, i);
    if (opt.audit) opt.audit(configs[i].to_string(), r.value, r.method, r.residual);
  }
  rep.examined = configs.size();

  const ExtremalSpec spec = spec_from_ns(n, s);
  const ComplementConfig balanced({}, spec.parts);
  rep.expected_signature = balanced.to_string();
  rep.expected_labelings = 1;

  const CompareOptions copt{opt.tol, opt.tie};
  std::vector<ComplementConfig> pool;
  for (const auto& [v, i] : tracker.near()) pool.push_back(configs[i]);
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.to_string() < b.to_string(); });
  std::string failure;
  const auto champ = detail::tournament(pool, copt, rep.ties_resolved_by_certificate, failure);

  if (!champ) {
    rep.verdict = Verdict::Violation;
    rep.witness = failure;
    for (const auto& c : pool) rep.minimizers.push_back({c.to_string(), 1, rho_via_secular(c, opt.tol).value, ""});
  } else {
    const ComplementConfig& best = pool[*champ];
    const double best_rho = rho_via_secular(best, opt.tol).value;
    rep.minimizers.push_back({best.to_string(), 1, best_rho, ""});
    rep.rho_min = best_rho;

    // Runner-up: the certified second place inside the tie window, else the
    // best value beyond it.
    std::vector<ComplementConfig> rest;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (i != *champ) rest.push_back(pool[i]);
    std::optional<ComplementConfig> runner;
    if (!rest.empty()) {
      std::uint64_t unused = 0;
      std::string ignored;
      if (auto r = detail::tournament(rest, copt, unused, ignored)) runner = rest[*r];
    } else if (tracker.runner_up()) {
      runner = configs[tracker.runner_up()->second];
    }
    if (runner) {
      const auto cmp = compare_rho(*runner, best, copt);
      rep.runner_up_signature = runner->to_string();
      rep.runner_up_rho = rho_via_secular(*runner, opt.tol).value;
      rep.gap = *rep.runner_up_rho - best_rho;
      rep.runner_up_certificate = cmp.certificate;
    }
    if (best == balanced) {
      rep.verdict = Verdict::UniqueBalancedPaths;
    } else {
      rep.verdict = Verdict::Violation;
      rep.witness = "minimizer " + best.to_string() + " differs from " + balanced.to_string();
    }
  }

  // Balanced paths are the strict minimum of Psi within each cycle group.
  const double lambda_bal = rho_via_secular(balanced, opt.tol).value + 1.0;
  const Theta t = Theta::from_lambda(lambda_bal);
  CheckTally claim1{"balanced-paths-per-cycle-group", 0, 0, ""};
  CheckTally claim2{"cyclic-psi-above-balanced", 0, 0, ""};
  CheckTally cyclic_min{"no-cyclic-minimizer", 0, 0, ""};
  std::map<std::vector<int>, std::vector<int>> group_balanced;
  for (const auto& c : configs)
    if (!group_balanced.count(c.cycles()))
      group_balanced[c.cycles()] = balanced_partition(n - c.cycle_vertices(), s + 1);
  for (const auto& c : configs) {
    const ComplementConfig group_best(c.cycles(), group_balanced[c.cycles()]);
    if (!(c == group_best)) {
      ++claim1.examined;
      const auto [eb, ec] = path_excess_remainders(group_best, c, t.theta);
      if (!(eb < ec)) {
        ++claim1.violations;
        if (claim1.detail.empty()) claim1.detail = c.to_string() + " not above " + group_best.to_string();
      }
    }
    if (c.cycle_count() > 0) {
      ++cyclic_min.examined;
      for (const double lambda : {lambda_bal, 3.0, n + 2.0}) {
        ++claim2.examined;
        const auto [ec, eb] = path_excess_remainders(c, balanced, Theta::from_lambda(lambda).theta);
        if (!(ec > eb)) {
          ++claim2.violations;
          if (claim2.detail.empty()) {
            std::ostringstream msg;
            msg << c.to_string() << " at lambda=" << lambda;
            claim2.detail = msg.str();
          }
        }
      }
    }
  }
  for (const auto& m : rep.minimizers)
    if (m.signature.find('C') != std::string::npos) {
      ++cyclic_min.violations;
      cyclic_min.detail = m.signature;
    }
  for (const CheckTally* c : {&claim1, &claim2, &cyclic_min})
    if (c->violations > 0 && rep.verdict == Verdict::UniqueBalancedPaths) {
      rep.verdict = Verdict::Violation;
      rep.witness = c->name + ": " + c->detail;
    }
  rep.checks = {claim1, claim2, cyclic_min};
  rep.wall_time_seconds = detail::seconds_since(start);
  return rep;
}

/// Number of e-subsets of the vertex pairs an exhaustive run over m would examine.
inline double exhaustive_candidates(long long m) {
  const ExtremalSpec spec = params_from_m(m);
  return detail::binomial(static_cast<double>(binom2(spec.n)), spec.complement_edges());
}

namespace detail {

struct ExhaustiveState {
  MinTracker<std::vector<int>> tracker;
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
  std::uint64_t diameter_violations = 0;
  std::uint64_t lower_bound_examined = 0;
  std::uint64_t lower_bound_violations = 0;
  std::string first_failure;
  DenseMatrix dist;
  MaskGraph h0, g;

  ExhaustiveState(int n, double tie) : tracker(tie), dist(n, 0.0), h0(n), g(n) {}

  void merge(const ExhaustiveState& o) {
    tracker.merge(o.tracker);
    examined += o.examined;
    skipped += o.skipped;
    diameter_violations += o.diameter_violations;
    lower_bound_examined += o.lower_bound_examined;
    lower_bound_violations += o.lower_bound_violations;
    if (first_failure.empty()) first_failure = o.first_failure;
  }
};

}  // namespace detail

/// Every labeled complement with e = n-1-s edges on n vertices; rho of each
/// connected complement by the eigensolver. The minimizer set must be exactly
/// the labelings of the balanced path union.
inline VerificationReport verify_exhaustive(long long m, const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const ExtremalSpec spec = params_from_m(m);
  const int n = spec.n, e = spec.complement_edges();
  if (n > 64) throw ContractError("exhaustive search supports n <= 64");
  const auto pairs = detail::vertex_pairs(n);
  const double required = detail::binomial(static_cast<double>(pairs.size()), e);
  if (required > opt.cap)
    throw CapExceededError("exhaustive search over m=" + std::to_string(m) + " needs " +
                               std::to_string(static_cast<unsigned long long>(required)) + " candidates",
                           required, opt.cap);

  VerificationReport rep;
  rep.space = {SearchMode::Exhaustive, n, spec.s, m, e,
               "all " + std::to_string(e) + "-edge labeled complements on " + std::to_string(n) + " vertices",
               required};

  std::mutex audit_mutex;
  auto states = detail::sharded_subsets<detail::ExhaustiveState>(
      static_cast<int>(pairs.size()), e, opt.threads, [&] { return detail::ExhaustiveState(n, opt.tie); },
      [&](detail::ExhaustiveState& st, std::span<const int> subset) {
        st.h0.assign_edges(pairs, subset);
        st.g.complement_of(st.h0);
        int diam = 0;
        if (!detail::distance_matrix(st.g, st.dist, &diam)) {
          ++st.skipped;
          return;
        }
        ++st.examined;
        if (diam > 2) {
          ++st.diameter_violations;
          if (st.first_failure.empty()) st.first_failure = "diameter " + std::to_string(diam);
        }
        const SpectralResult r = dominant_eigenvalue(st.dist, opt.tol);
        bool no_isolated = e > 0;
        for (int v = 0; v < n && no_isolated; ++v) no_isolated = st.h0.adj[v] != 0;
        if (no_isolated && n >= 4) {
          ++st.lower_bound_examined;
          if (r.value < n - opt.tie) ++st.lower_bound_violations;
        }
        st.tracker.offer(r.value, std::vector<int>(subset.begin(), subset.end()));
        if (opt.audit) {
          std::lock_guard lock(audit_mutex);
          opt.audit(to_graph6(detail::subset_graph(n, pairs, subset)), r.value, r.method, r.residual);
        }
      });
  detail::ExhaustiveState total(n, opt.tie);
  for (const auto& st : states) total.merge(st);
  rep.examined = total.examined;
  rep.skipped = total.skipped;

  rep.expected_signature = shape_signature(components(path_union(spec.parts)));
  rep.expected_labelings = detail::path_union_labelings(spec.parts);

  // Group the tie window by component signature.
  std::map<std::string, MinimizerEntry> groups;
  std::map<std::string, Graph> group_graph;
  for (const auto& [value, subset] : total.tracker.near()) {
    const Graph h0 = detail::subset_graph(n, pairs, subset);
    const std::string sig = shape_signature(components(h0));
    auto [it, fresh] = groups.try_emplace(sig, MinimizerEntry{sig, 0, value, to_graph6(h0)});
    ++it->second.labelings;
    if (fresh) {
      group_graph.emplace(sig, h0);
    } else if (value < it->second.rho) {
      it->second.rho = value;
    }
    if (fresh || to_graph6(h0) < it->second.example_h0) it->second.example_h0 = to_graph6(h0);
  }
  rep.rho_min = total.tracker.best();

  std::string best_sig;
  std::vector<std::string> others;
  if (groups.size() == 1) {
    best_sig = groups.begin()->first;
  } else {
    // Several shapes inside the window: order them by certificate when all are
    // cycle/path configurations.
    std::vector<ComplementConfig> pool;
    std::vector<std::string> sigs;
    bool all_configs = true;
    for (const auto& [sig, g] : group_graph) {
      auto c = config_from_graph(g);
      if (!c || c->component_count() < 2) {
        all_configs = false;
        break;
      }
      pool.push_back(*c);
      sigs.push_back(sig);
    }
    std::string failure = "several minimizer shapes within tie window";
    std::optional<std::size_t> champ;
    if (all_configs) champ = detail::tournament(pool, {opt.tol, opt.tie}, rep.ties_resolved_by_certificate, failure);
    if (champ) {
      best_sig = sigs[*champ];
      for (const auto& sig : sigs)
        if (sig != best_sig) others.push_back(sig);
    } else {
      rep.witness = failure;
    }
  }

  if (!best_sig.empty()) {
    rep.minimizers.push_back(groups.at(best_sig));
    rep.rho_min = groups.at(best_sig).rho;
    if (!others.empty()) {
      const auto runner = *std::min_element(others.begin(), others.end(), [&](const auto& a, const auto& b) {
        return groups.at(a).rho < groups.at(b).rho;
      });
      rep.runner_up_signature = runner;
      rep.runner_up_rho = groups.at(runner).rho;
    } else if (total.tracker.runner_up()) {
      rep.runner_up_rho = total.tracker.runner_up()->first;
      rep.runner_up_signature =
          shape_signature(components(detail::subset_graph(n, pairs, total.tracker.runner_up()->second)));
    }
    if (rep.runner_up_rho) {
      rep.gap = *rep.runner_up_rho - rep.rho_min;
      rep.runner_up_certificate = rep.gap;
    }
  } else {
    for (const auto& [sig, entry] : groups) rep.minimizers.push_back(entry);
  }

  rep.verdict = Verdict::Violation;
  if (best_sig.empty()) {
    if (rep.witness.empty()) rep.witness = "no connected candidate";
  } else if (best_sig != rep.expected_signature) {
    rep.witness = "minimizer " + best_sig + " (" + rep.minimizers.front().example_h0 + ") differs from " +
                  rep.expected_signature;
  } else if (rep.minimizers.front().labelings != rep.expected_labelings) {
    rep.witness = "found " + std::to_string(rep.minimizers.front().labelings) + " labelings of " + best_sig +
                  ", expected " + std::to_string(rep.expected_labelings);
  } else if (total.diameter_violations > 0) {
    rep.witness = "complement with " + total.first_failure;
  } else if (total.lower_bound_violations > 0) {
    rep.witness = "rho below n on a complement without isolated vertices";
  } else {
    rep.verdict = Verdict::UniqueBalancedPaths;
  }
  rep.checks = {{"diameter-at-most-two", rep.examined, total.diameter_violations, total.first_failure},
                {"rho-at-least-n", total.lower_bound_examined, total.lower_bound_violations, ""}};
  rep.wall_time_seconds = detail::seconds_since(start);
  return rep;
}

struct EdgeSwitchRow {
  std::string config;
  double rho_secular = 0.0;
  double rho_eigen = 0.0;
  double delta = 0.0;  // |secular - eigen|
};

struct EdgeSwitchReport {
  std::vector<EdgeSwitchRow> rows;  // best, cyclic, merged
  bool ordered = false;             // rows[0] < rows[1] < rows[2] by both routes
  double gap_cyclic_best = 0.0;
  double gap_merged_cyclic = 0.0;
  double max_delta = 0.0;
};

/// The n=11 single edge-switch: breaking the C3 of C3+P4+P4 into P3 and merging
/// the P4s into P8 raises rho, while P5+P6 sits below both.
inline EdgeSwitchReport edge_switch_counterexample(double tol = kDefaultTolerance) {
  EdgeSwitchReport out;
  for (const char* text : {"P5+P6", "C3+P4+P4", "P3+P8"}) {
    const auto config = ComplementConfig::parse(text);
    EdgeSwitchRow row{config.to_string(), rho_via_secular(config, tol).value, 0.0, 0.0};
    row.rho_eigen = distance_spectral_radius(complement(config_graph(config)), tol).value;
    row.delta = std::abs(row.rho_secular - row.rho_eigen);
    out.max_delta = std::max(out.max_delta, row.delta);
    out.rows.push_back(row);
  }
  const auto& r = out.rows;
  out.ordered = r[0].rho_secular < r[1].rho_secular && r[1].rho_secular < r[2].rho_secular &&
                r[0].rho_eigen < r[1].rho_eigen && r[1].rho_eigen < r[2].rho_eigen;
  out.gap_cyclic_best = r[1].rho_secular - r[0].rho_secular;
  out.gap_merged_cyclic = r[2].rho_secular - r[1].rho_secular;
  return out;
}

}  // namespace dspec
