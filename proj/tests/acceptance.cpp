// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dspec/dspec.hpp"
#include "oracles.hpp"

using namespace dspec;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
};

std::string fmt(double v, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

ComplementConfig random_config(std::mt19937& rng, int n) {
  for (;;) {
    std::vector<int> cycles, paths;
    int left = n;
    while (left > 0) {
      int size = 1 + static_cast<int>(rng() % 9);
      if (size > left) size = left;
      if (size >= 3 && rng() % 3 == 0)
        cycles.push_back(size);
      else
        paths.push_back(size);
      left -= size;
    }
    ComplementConfig c(cycles, paths);
    if (c.component_count() >= 2) return c;
  }
}

double rho_eigen(const ComplementConfig& c) { return distance_spectral_radius(complement(config_graph(c))).value; }

// 1. Edge-switch values at n = 11 by both routes.
Outcome edge_switch() {
  Outcome o;
  const auto r = edge_switch_counterexample();
  const double published[] = {11.65442, 11.65444, 11.65452};
  for (std::size_t i = 0; i < 3; ++i) {
    o.require(std::abs(r.rows[i].rho_secular - published[i]) <= 1e-4, r.rows[i].config + " secular value");
    o.require(std::abs(r.rows[i].rho_eigen - published[i]) <= 1e-4, r.rows[i].config + " eigen value");
  }
  o.require(r.ordered, "ordering P5+P6 < C3+P4+P4 < P3+P8 fails");
  o.require(r.max_delta <= 1e-9, "routes disagree by " + fmt(r.max_delta));
  const auto rep = verify_structured(11, 1);
  o.require(rep.verdict == Verdict::UniqueBalancedPaths && rep.minimizers.front().signature == "P5+P6",
            "n=11 structured minimizer: " + rep.witness);
  if (o.pass)
    o.note = "rho(P5+P6)=" + fmt(r.rows[0].rho_secular, 12) + ", max |secular-eigen|=" + fmt(r.max_delta);
  return o;
}

// 2. Secular root against the eigensolver on random configurations.
Outcome secular_vs_eigen() {
  Outcome o;
  std::mt19937 rng(20260101);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 5 + static_cast<int>(rng() % 26);
    const auto c = random_config(rng, n);
    const double delta = std::abs(rho_via_secular(c).value - rho_eigen(c));
    worst = std::max(worst, delta);
    o.require(delta <= 1e-8, c.to_string() + " differs by " + fmt(delta));
  }
  if (o.pass) o.note = "200 configs, max delta " + fmt(worst);
  return o;
}

// 3. Closed forms against tridiagonal and dense solves.
Outcome closed_forms() {
  Outcome o;
  double worst = 0.0;
  for (double lambda : {2.001, 2.05, 2.5, 3.0, 4.0, 7.5, 12.0, 31.0}) {
    for (int k = 1; k <= 200; ++k) {
      const double want = oracle::path_quadratic_form(k, lambda);
      const double rel = std::abs(phi_path(k, lambda) - want) / std::abs(want);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-9, "P" + std::to_string(k) + " at " + fmt(lambda));
    }
    for (int l = 3; l <= 60; ++l) {
      const double want = oracle::cycle_quadratic_form(l, lambda);
      const double rel = std::abs(phi_cycle(l, lambda) - want) / std::abs(want);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-9, "C" + std::to_string(l) + " at " + fmt(lambda));
    }
  }
  if (o.pass) o.note = "max relative error " + fmt(worst);
  return o;
}

// 4. Increment identity, strict growth of increments, telescoped bound.
Outcome increments() {
  Outcome o;
  long pairs = 0, resolvable = 0;
  for (double lambda : {2.01, 2.2, 3.0, 5.0, 11.0, 40.0}) {
    for (int k = 1; k <= 200; ++k) {
      const double inc = phi_path_increment(k, lambda);
      o.require(std::abs(inc - (phi_path(k + 1, lambda) - phi_path(k, lambda))) <= 1e-10,
                "increment identity at k=" + std::to_string(k));
      o.require(inc > 0.0 && inc <= 1.0 / (lambda - 2.0), "increment bounds");
      ++pairs;
      o.require(increment_log_deficit(k + 1, lambda) < increment_log_deficit(k, lambda),
                "log deficit not strictly decreasing at k=" + std::to_string(k));
      if (phi_path_increment(k + 1, lambda) > inc) ++resolvable;
      for (int m = 1; m <= 8; ++m) {
        const double bound = m / (lambda - 2.0);
        // each deficit 1 - h(j) is positive iff its log is finite; the sum can underflow
        bool strict = true;
        for (int j = k; j < k + m; ++j) strict = strict && std::isfinite(increment_log_deficit(j, lambda));
        const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * phi_path(k + m, lambda);
        o.require(phi_path(k + m, lambda) - phi_path(k, lambda) <= bound + rounding && strict,
                  "telescoped bound at k=" + std::to_string(k));
      }
    }
  }
  if (o.pass)
    o.note = std::to_string(pairs) + " pairs strict via log deficit, " + std::to_string(resolvable) +
             " also strict in plain double";
  return o;
}

// 5. Psi(rho + 1) = 1 at the eigensolver value.
Outcome secular_identity() {
  Outcome o;
  std::mt19937 rng(77);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto c = random_config(rng, 5 + static_cast<int>(rng() % 26));
    const double dev = std::abs(psi(c, rho_eigen(c) + 1.0) - 1.0);
    worst = std::max(worst, dev);
    o.require(dev <= 1e-10, c.to_string() + " deviates by " + fmt(dev));
  }
  if (o.pass) o.note = "max |Psi - 1| " + fmt(worst);
  return o;
}

// 6. Exhaustive labeled search, n = 3..9.
Outcome exhaustive_grid() {
  Outcome o;
  std::uint64_t examined = 0;
  for (long long m = 3; m <= binom2(9); ++m) {
    const auto rep = verify_exhaustive(m);
    examined += rep.examined;
    o.require(rep.verdict == Verdict::UniqueBalancedPaths, "m=" + std::to_string(m) + ": " + rep.witness);
    for (const auto& c : rep.checks) o.require(c.violations == 0, "m=" + std::to_string(m) + " " + c.name);
  }
  if (o.pass) o.note = "m=3.." + std::to_string(binom2(9)) + ", " + std::to_string(examined) + " labeled complements";
  return o;
}

// 7. Structured search, 8 <= n <= 30.
Outcome structured_grid() {
  Outcome o;
  int cases = 0;
  std::uint64_t configs = 0;
  for (int n = 8; n <= 30; ++n)
    for (int s = 1; structured_regime(n, s); ++s) {
      const auto rep = verify_structured(n, s);
      ++cases;
      configs += rep.examined;
      const std::string at = "n=" + std::to_string(n) + " s=" + std::to_string(s);
      o.require(rep.verdict == Verdict::UniqueBalancedPaths, at + ": " + rep.witness);
      for (const auto& c : rep.checks) o.require(c.violations == 0, at + " " + c.name + " " + c.detail);
    }
  if (o.pass) o.note = std::to_string(cases) + " (n,s) cases, " + std::to_string(configs) + " configurations";
  return o;
}

// 8. Large-s search with walk certificates, n = 3..12.
Outcome large_s_grid() {
  Outcome o;
  int cases = 0;
  std::uint64_t examined = 0;
  for (int n = 3; n <= 12; ++n)
    for (int s = 1; s <= n - 1; ++s) {
      if (!large_s_regime(n, s)) continue;
      const auto rep = verify_large_s(n, s);
      ++cases;
      examined += rep.examined;
      const std::string at = "n=" + std::to_string(n) + " s=" + std::to_string(s);
      o.require(rep.verdict == Verdict::UniqueBalancedPaths, at + ": " + rep.witness);
      for (const auto& c : rep.checks) o.require(c.violations == 0, at + " " + c.name);
      const auto* cert = rep.check("dominance-certificates");
      o.require(cert && cert->examined == rep.examined - rep.expected_labelings, at + " certificate coverage");
    }
  if (o.pass) o.note = std::to_string(cases) + " (n,s) cases, " + std::to_string(examined) + " labeled complements";
  return o;
}

// 9. Over all connected labeled graphs on n vertices, K_n is the unique
// minimizer and P_n (n!/2 labelings) the unique maximizer.
Outcome connected_extremes() {
  Outcome o;
  for (int n = 4; n <= 7; ++n) {
    const auto pairs = detail::vertex_pairs(n);
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    detail::MaskGraph g(n);
    DenseMatrix dist(n);
    double lo = 1e300, hi = -1.0;
    std::uint64_t lo_count = 0, hi_count = 0, lo_mask = 0;
    bool hi_all_paths = true;
    std::vector<int> subset;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      subset.clear();
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) subset.push_back(static_cast<int>(i));
      if (static_cast<int>(subset.size()) < n - 1) continue;
      g.assign_edges(pairs, subset);
      if (!detail::distance_matrix(g, dist)) continue;
      const double r = dominant_eigenvalue(dist).value;
      const bool is_path = static_cast<int>(subset.size()) == n - 1 && g.max_degree() <= 2;
      if (r < lo - 1e-9) {
        lo = r;
        lo_count = 1;
        lo_mask = mask;
      } else if (r <= lo + 1e-9) {
        ++lo_count;
      }
      if (r > hi + 1e-9) {
        hi = r;
        hi_count = 1;
        hi_all_paths = is_path;
      } else if (r >= hi - 1e-9) {
        ++hi_count;
        hi_all_paths = hi_all_paths && is_path;
      }
    }
    std::uint64_t half_factorial = 1;
    for (int i = 3; i <= n; ++i) half_factorial *= static_cast<std::uint64_t>(i);
    const std::string at = "n=" + std::to_string(n);
    o.require(lo_count == 1 && lo_mask == total - 1 && std::abs(lo - (n - 1)) <= 1e-9, at + " minimizer");
    o.require(hi_count == half_factorial && hi_all_paths, at + " maximizer count " + std::to_string(hi_count));
  }
  if (o.pass) o.note = "n=4..7";
  return o;
}

// 10. Balanced path splits: strict minimum of the path excess, entrywise
// dominance, and the rebalancing descent.
Outcome balanced_splits() {
  Outcome o;
  std::mt19937 rng(4242);
  int trials = 0;
  while (trials < 500) {
    const int c = 2 + static_cast<int>(rng() % 5);
    std::vector<int> parts;
    for (int i = 0; i < c; ++i) parts.push_back(2 + static_cast<int>(rng() % 12));
    if (is_balanced(parts)) continue;
    ++trials;
    int n = 0;
    for (int k : parts) n += k;
    const ComplementConfig uneven({}, parts), even({}, balanced_partition(n, c));
    for (double lambda : {3.0, 5.0, n + 1.0}) {
      const auto [e_even, e_uneven] = path_excess_remainders(even, uneven, Theta::from_lambda(lambda).theta);
      o.require(e_even < e_uneven, uneven.to_string() + " at lambda=" + fmt(lambda));
    }
    const auto trace = rebalance_to_fixpoint(parts);
    std::vector<int> last = trace.states.back();
    std::sort(last.begin(), last.end());
    o.require(last == balanced_partition(n, c), uneven.to_string() + " fixpoint");
    for (std::size_t i = 1; i < trace.square_sums.size(); ++i)
      o.require(trace.square_sums[i] - trace.square_sums[i - 1] <= -2, uneven.to_string() + " descent");
  }
  for (int c = 1; c <= 10; ++c)
    for (int n1 = c; n1 <= 60; ++n1)
      for (int n2 = n1; n2 <= 60; ++n2)
        o.require(partition_dominance(n1, n2, c),
                  "dominance " + std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(c));
  if (o.pass) o.note = "500 uneven splits x 3 lambdas, dominance grid c<=10, N<=60";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"n=11 edge-switch values and ordering", edge_switch},
      {"secular root matches eigensolver", secular_vs_eigen},
      {"closed forms match linear solves", closed_forms},
      {"path increments grow strictly", increments},
      {"Psi(rho+1) = 1 at the eigenvalue", secular_identity},
      {"exhaustive labeled search n<=9", exhaustive_grid},
      {"structured search 8<=n<=30", structured_grid},
      {"large-s walk-certified search n<=12", large_s_grid},
      {"connected extremes n=4..7", connected_extremes},
      {"balanced path splits", balanced_splits},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s  %2zu  %-40s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
