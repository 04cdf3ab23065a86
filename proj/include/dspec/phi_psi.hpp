#pragma once

// Phi_K(lambda) = 1^T (lambda I - A(K))^{-1} 1 for path and cycle components,
// Psi of a complement configuration, and rho recovered from Psi(rho + 1) = 1.

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dspec/errors.hpp"
#include "dspec/graph.hpp"
#include "dspec/spectral.hpp"

namespace dspec {

namespace detail {

inline void require_lambda(double lambda) {
  if (!(lambda > 2.0) || !std::isfinite(lambda))
    throw DomainError("lambda must be a finite value > 2, got " + std::to_string(lambda));
}

}  // namespace detail

/// lambda > 2 together with its root theta > 1 of theta + 1/theta = lambda.
struct Theta {
  double lambda = 0.0;
  double theta = 0.0;

  static Theta from_lambda(double lambda) {
    detail::require_lambda(lambda);
    return {lambda, (lambda + std::sqrt(lambda * lambda - 4.0)) / 2.0};
  }
};

inline double phi_cycle(int length, double lambda) {
  if (length < 3) throw DomainError("cycle length must be >= 3");
  detail::require_lambda(lambda);
  return length / (lambda - 2.0);
}

/// R_k(theta) = (1 - (1+theta)/(1+theta^{k+1})) / (theta - 1), evaluated through
/// u = theta^{-(k+1)} so that no power of theta above 1 is ever formed.
inline double r_k(int k, double theta) {
  if (k < 1) throw DomainError("r_k needs k >= 1");
  if (!(theta > 1.0) || !std::isfinite(theta)) throw DomainError("theta must be a finite value > 1");
  const double u = std::pow(theta, -(k + 1.0));
  return (1.0 - (1.0 + theta) * u / (1.0 + u)) / (theta - 1.0);
}

inline double phi_path(int k, double lambda) {
  if (k < 1) throw DomainError("path order must be >= 1");
  detail::require_lambda(lambda);
  if (k == 1) return 1.0 / lambda;
  const Theta t = Theta::from_lambda(lambda);
  return (k - 2.0 * r_k(k, t.theta)) / (lambda - 2.0);
}

/// Phi_{P_{k+1}}(lambda) - Phi_{P_k}(lambda) as h(k)/(lambda-2) with
/// h(k) = prod_{j=1,2} (theta^{k+j} - 1)/(theta^{k+j} + 1). The identity also
/// holds at k = 1, so k >= 1 is accepted.
inline double phi_path_increment(int k, double lambda) {
  if (k < 1) throw DomainError("increment needs k >= 1");
  const Theta t = Theta::from_lambda(lambda);
  const double u1 = std::pow(t.theta, -(k + 1.0));
  const double u2 = std::pow(t.theta, -(k + 2.0));
  return ((1.0 - u1) / (1.0 + u1)) * ((1.0 - u2) / (1.0 + u2)) / (lambda - 2.0);
}

/// log(1 - h(k)), where h(k) = (lambda-2) * phi_path_increment(k, lambda).
///
/// 1 - h(k) = 2(u1+u2)/((1+u1)(1+u2)) is formed in log space, so it stays
/// exact-ordered long after h(k) itself has rounded to 1.0.
inline double increment_log_deficit(int k, double lambda) {
  if (k < 1) throw DomainError("increment needs k >= 1");
  const Theta t = Theta::from_lambda(lambda);
  const double log_theta = std::log(t.theta);
  const double u1 = std::exp(-(k + 1.0) * log_theta);
  const double u2 = std::exp(-(k + 2.0) * log_theta);
  return std::log(2.0) - (k + 1.0) * log_theta + std::log1p(1.0 / t.theta) - std::log1p(u1) - std::log1p(u2);
}

/// Complement of G written as a multiset of cycles (length >= 3) and paths
/// (order >= 1; order 1 is an isolated vertex). Both lists are kept sorted.
class ComplementConfig {
 public:
  ComplementConfig() = default;
  ComplementConfig(std::vector<int> cycles, std::vector<int> paths) : cycles_(std::move(cycles)), paths_(std::move(paths)) {
    for (int l : cycles_)
      if (l < 3) throw ContractError("cycle length " + std::to_string(l) + " < 3");
    for (int k : paths_)
      if (k < 1) throw ContractError("path order " + std::to_string(k) + " < 1");
    std::sort(cycles_.begin(), cycles_.end());
    std::sort(paths_.begin(), paths_.end());
  }

  /// Parses "C3+P4+P4" (',' is accepted as separator too).
  static ComplementConfig parse(std::string_view text) {
    std::vector<int> cycles, paths;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find_first_of("+,", pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view tok = text.substr(pos, end - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (tok.size() < 2 || (tok[0] != 'C' && tok[0] != 'P'))
        throw ContractError("bad component token '" + std::string(tok) + "' (expected C<l> or P<k>)");
      int size = 0;
      for (char c : tok.substr(1)) {
        if (c < '0' || c > '9') throw ContractError("bad component token '" + std::string(tok) + "'");
        size = size * 10 + (c - '0');
      }
      (tok[0] == 'C' ? cycles : paths).push_back(size);
      pos = end + 1;
    }
    if (cycles.empty() && paths.empty()) throw ContractError("empty configuration");
    return {std::move(cycles), std::move(paths)};
  }

  const std::vector<int>& cycles() const noexcept { return cycles_; }
  const std::vector<int>& paths() const noexcept { return paths_; }
  int cycle_vertices() const { return std::accumulate(cycles_.begin(), cycles_.end(), 0); }
  int path_vertices() const { return std::accumulate(paths_.begin(), paths_.end(), 0); }
  int order() const { return cycle_vertices() + path_vertices(); }
  int cycle_count() const { return static_cast<int>(cycles_.size()); }
  int path_count() const { return static_cast<int>(paths_.size()); }
  int component_count() const { return cycle_count() + path_count(); }

  std::string to_string() const {
    std::string out;
    for (int l : cycles_) out += (out.empty() ? "C" : "+C") + std::to_string(l);
    for (int k : paths_) out += (out.empty() ? "P" : "+P") + std::to_string(k);
    return out;
  }

  friend bool operator==(const ComplementConfig&, const ComplementConfig&) = default;

 private:
  std::vector<int> cycles_;
  std::vector<int> paths_;
};

/// The configuration realized on consecutive labels: cycles first, then paths.
inline Graph config_graph(const ComplementConfig& config) {
  std::vector<Edge> edges;
  int offset = 0;
  for (int l : config.cycles()) {
    for (int i = 0; i < l; ++i) edges.emplace_back(offset + i, offset + (i + 1) % l);
    offset += l;
  }
  for (int k : config.paths()) {
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(offset + i, offset + i + 1);
    offset += k;
  }
  return Graph(offset, std::move(edges));
}

inline std::optional<ComplementConfig> config_from_graph(const Graph& h0) {
  std::vector<int> cycles, paths;
  for (const Component& c : components(h0)) {
    if (c.shape.kind == ShapeKind::Other) return std::nullopt;
    (c.shape.kind == ShapeKind::Cycle ? cycles : paths).push_back(c.shape.size);
  }
  return ComplementConfig(std::move(cycles), std::move(paths));
}

inline double psi(const ComplementConfig& config, double lambda) {
  detail::require_lambda(lambda);
  double sum = 0.0;
  for (int l : config.cycles()) sum += phi_cycle(l, lambda);
  for (int k : config.paths()) sum += phi_path(k, lambda);
  return sum;
}

/// E(theta) = sum over paths of 1/(1 + theta^{k+1}).
///
/// Psi = n/(lambda-2) - 2P/((lambda-2)(theta-1)) + 2(1+theta)/((lambda-2)(theta-1)) * E
/// with P the number of paths, so configurations sharing n and P are ordered
/// by E alone, which carries full relative precision however small it gets.
inline double psi_path_excess(const ComplementConfig& config, double theta) {
  if (!(theta > 1.0)) throw DomainError("theta must be > 1");
  double sum = 0.0;
  for (int k : config.paths()) {
    const double u = std::pow(theta, -(k + 1.0));
    sum += u / (1.0 + u);
  }
  return sum;
}

/// E_a(theta) - E_b(theta) with the path sizes common to both multisets
/// cancelled before summation, as a pair (E_a', E_b') of the remainders.
inline std::pair<double, double> path_excess_remainders(const ComplementConfig& a, const ComplementConfig& b,
                                                        double theta) {
  std::vector<int> only_a, only_b;
  std::set_difference(a.paths().begin(), a.paths().end(), b.paths().begin(), b.paths().end(),
                      std::back_inserter(only_a));
  std::set_difference(b.paths().begin(), b.paths().end(), a.paths().begin(), a.paths().end(),
                      std::back_inserter(only_b));
  return {psi_path_excess(ComplementConfig({}, only_a), theta), psi_path_excess(ComplementConfig({}, only_b), theta)};
}

/// 1^T (lambda I - A)^{-1} 1 by Cholesky; lambda must exceed lambda(A).
inline double quadratic_form_inverse(const DenseMatrix& a, double lambda) {
  const int n = a.order();
  DenseMatrix l(n);
  for (int j = 0; j < n; ++j) {
    double d = lambda - a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw DomainError("lambda does not exceed the adjacency spectral radius of the component");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double v = -a(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  // L z = 1, then 1^T M^{-1} 1 = |z|^2.
  double sum = 0.0;
  std::vector<double> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double v = 1.0;
    for (int k = 0; k < i; ++k) v -= l(i, k) * z[k];
    z[i] = v / l(i, i);
    sum += z[i] * z[i];
  }
  return sum;
}

/// Psi for an arbitrary h0. Path and cycle components use the closed forms,
/// anything else a linear solve; `closed_form_only` records which happened.
struct GeneralPsi {
  double value = 0.0;
  bool closed_form_only = true;
};

inline GeneralPsi psi(const Graph& h0, double lambda) {
  detail::require_lambda(lambda);
  GeneralPsi out;
  for (const Component& c : components(h0)) {
    switch (c.shape.kind) {
      case ShapeKind::Cycle: out.value += phi_cycle(c.shape.size, lambda); break;
      case ShapeKind::Path: out.value += phi_path(c.shape.size, lambda); break;
      case ShapeKind::Other:
        out.value += quadratic_form_inverse(adjacency_matrix(induced_subgraph(h0, c.vertices)), lambda);
        out.closed_form_only = false;
        break;
    }
  }
  return out;
}

/// rho(complement of config) as lambda* - 1 where Psi(lambda*) = 1.
///
/// Bisection on [3, n+2] down to width 1e-13, then up to three Newton steps
/// (central-difference slope) that are kept only if they shrink |Psi - 1|.
inline SpectralResult rho_via_secular(const ComplementConfig& config, double tol = kDefaultTolerance) {
  const int n = config.order();
  if (n < 4) throw ContractError("secular route needs n >= 4, got " + std::to_string(n));
  if (config.component_count() < 2) throw ContractError("secular route needs at least two components in h0");

  auto f = [&](double lambda) { return psi(config, lambda) - 1.0; };
  double lo = 3.0, hi = n + 2.0;
  const double f_lo = f(lo), f_hi = f(hi);
  if (!(f_lo > 0.0) || !(f_hi <= 0.0))
    throw ContractError("secular bracket [3, n+2] does not straddle Psi = 1 (Psi(3) - 1 = " + std::to_string(f_lo) +
                        ", Psi(n+2) - 1 = " + std::to_string(f_hi) + ")");

  long iterations = 0;
  double root = hi, residual = std::abs(f_hi);
  if (f_hi < 0.0) {
    while (hi - lo > 1e-13) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;
      ++iterations;
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    root = lo + (hi - lo) / 2.0;
    residual = std::abs(f(root));
    for (int step = 0; step < 3 && residual > 0.0; ++step) {
      const double h = 1e-6 * root;
      const double slope = (f(root + h) - f(root - h)) / (2.0 * h);
      if (!(slope < 0.0)) break;
      const double candidate = root - f(root) / slope;
      ++iterations;
      if (!(candidate > 3.0 && candidate <= n + 2.0)) break;
      const double r = std::abs(f(candidate));
      if (!(r < residual)) break;
      root = candidate;
      residual = r;
    }
  }
  SpectralResult out{root - 1.0, Method::Secular, residual, iterations, std::nullopt};
  if (residual > tol) throw ConvergenceError("secular residual " + std::to_string(residual) + " exceeds tolerance", out);
  return out;
}

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
  return o == Ordering::Less ? "less" : o == Ordering::Equal ? "equal" : "greater";
}

enum class ComparisonRoute {
  OneSidedPsi,     // sign of Psi_a(rho_b + 1) - 1
  RootDifference,  // both secular roots, |rho_a - rho_b| > root_tie
  PathExcess,      // same n and path count: sign of E_a - E_b at rho_b + 1
  Identical,       // same multiset
  Unresolved,      // roots within root_tie and no exact route applies
};

inline const char* to_string(ComparisonRoute r) {
  switch (r) {
    case ComparisonRoute::OneSidedPsi: return "one-sided-psi";
    case ComparisonRoute::RootDifference: return "root-difference";
    case ComparisonRoute::PathExcess: return "path-excess";
    case ComparisonRoute::Identical: return "identical";
    case ComparisonRoute::Unresolved: return "unresolved";
  }
  return "?";
}

/// `certificate` is the signed gap that decided the ordering: Psi_a(lambda)-1 for
/// OneSidedPsi, rho_a-rho_b for RootDifference, and Psi_a-Psi_b rebuilt from
/// E_a-E_b for PathExcess. rho_a is only computed when a fallback needed it.
struct ComparisonResult {
  Ordering order = Ordering::Equal;
  ComparisonRoute route = ComparisonRoute::Unresolved;
  double certificate = 0.0;
  std::optional<double> rho_a;
  double rho_b = 0.0;
};

struct CompareOptions {
  double secular_tol = kDefaultTolerance;
  double root_tie = 1e-9;
};

/// Orders rho(complement a) against rho(complement b) by the comparison
/// principle: Psi_a < 1 at lambda = rho_b + 1 forces rho_a < rho_b.
inline ComparisonResult compare_rho(const ComplementConfig& a, const ComplementConfig& b, CompareOptions opt = {}) {
  ComparisonResult out;
  out.rho_b = rho_via_secular(b, opt.secular_tol).value;
  if (a == b) {
    out.route = ComparisonRoute::Identical;
    out.rho_a = out.rho_b;
    return out;
  }
  const double lambda = out.rho_b + 1.0;
  const double gap = psi(a, lambda) - 1.0;
  if (std::abs(gap) > 10.0 * opt.secular_tol) {
    out.order = gap < 0.0 ? Ordering::Less : Ordering::Greater;
    out.route = ComparisonRoute::OneSidedPsi;
    out.certificate = gap;
    return out;
  }

  out.rho_a = rho_via_secular(a, opt.secular_tol).value;
  const double diff = *out.rho_a - out.rho_b;
  if (std::abs(diff) > opt.root_tie) {
    out.order = diff < 0.0 ? Ordering::Less : Ordering::Greater;
    out.route = ComparisonRoute::RootDifference;
    out.certificate = diff;
    return out;
  }

  if (a.order() == b.order() && a.path_count() == b.path_count()) {
    const Theta t = Theta::from_lambda(lambda);
    const auto [ea, eb] = path_excess_remainders(a, b, t.theta);
    const double scale = 2.0 * (1.0 + t.theta) / ((lambda - 2.0) * (t.theta - 1.0));
    out.route = ComparisonRoute::PathExcess;
    out.certificate = scale * (ea - eb);
    if (std::abs(ea - eb) > 1e-12 * std::max(ea, eb)) out.order = ea < eb ? Ordering::Less : Ordering::Greater;
    return out;
  }
  out.route = ComparisonRoute::Unresolved;
  out.certificate = diff;
  return out;
}

}  // namespace dspec
