#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dspec/errors.hpp"
#include "dspec/graph.hpp"

namespace dspec {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr long kDefaultMaxIterations = 1'000'000;

/// Square row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int order, double fill = 0.0)
      : n_(order), a_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), fill) {}

  int order() const noexcept { return n_; }
  double& operator()(int i, int j) { return a_[idx(i, j)]; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  std::span<const double> row(int i) const { return {a_.data() + idx(i, 0), static_cast<std::size_t>(n_)}; }

  double norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i) {
      double sum = 0.0;
      for (double x : row(i)) sum += std::abs(x);
      best = std::max(best, sum);
    }
    return best;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> a_;
};

enum class Method { Eigensolver, Secular };

inline const char* to_string(Method m) { return m == Method::Eigensolver ? "eigensolver" : "secular"; }

/// Outcome of either route to a spectral radius.
///
/// `residual` is ||Mx - rho x||_inf for the eigensolver (x of unit 2-norm) and
/// |Psi(rho + 1) - 1| for the secular route. `eigvec` is only produced by the
/// eigensolver; it is strictly positive whenever the input is irreducible.
struct SpectralResult {
  double value = 0.0;
  Method method = Method::Eigensolver;
  double residual = 0.0;
  long iterations = 0;
  std::optional<std::vector<double>> eigvec;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, SpectralResult best) : Error(message), best_(std::move(best)) {}
  const SpectralResult& best() const noexcept { return best_; }

 private:
  SpectralResult best_;
};

/// Largest eigenvalue of a symmetric entrywise-nonnegative matrix.
///
/// Power iteration on M + (||M||_inf / 2) I from the all-ones vector. The
/// shift makes the Perron root strictly dominant even for bipartite patterns.
/// Converged once the Rayleigh quotient moves by < tol * max(1, |rho|) and
/// ||Mx - rho x||_inf <= tol * ||M||_inf.
inline SpectralResult dominant_eigenvalue(const DenseMatrix& m, double tol = kDefaultTolerance,
                                          long max_iterations = kDefaultMaxIterations) {
  const int n = m.order();
  if (n < 1) throw ContractError("dominant_eigenvalue needs a matrix of order >= 1");
  if (!(tol > 0.0)) throw ContractError("tolerance must be positive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m(i, j) < 0.0 || !std::isfinite(m(i, j)))
        throw ContractError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is negative or not finite");
      if (j > i && m(i, j) != m(j, i))
        throw ContractError("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }

  const double norm = m.norm_inf();
  const std::size_t size = static_cast<std::size_t>(n);
  std::vector<double> x(size, 1.0 / std::sqrt(static_cast<double>(n)));
  if (norm == 0.0) return {0.0, Method::Eigensolver, 0.0, 0, x};

  const double shift = norm / 2.0;
  std::vector<double> y(size);
  double previous = std::numeric_limits<double>::quiet_NaN();
  SpectralResult best{0.0, Method::Eigensolver, std::numeric_limits<double>::infinity(), 0, std::nullopt};

  for (long it = 1; it <= max_iterations; ++it) {
    double rq = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      const auto r = m.row(i);
      for (int j = 0; j < n; ++j) acc += r[j] * x[j];
      y[i] = acc;
      rq += acc * x[i];
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < size; ++i) residual = std::max(residual, std::abs(y[i] - rq * x[i]));

    if (residual < best.residual) best = {rq, Method::Eigensolver, residual, it, x};
    if (std::abs(rq - previous) < tol * std::max(1.0, std::abs(rq)) && residual <= tol * norm)
      return {rq, Method::Eigensolver, residual, it, x};
    previous = rq;

    double len = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      y[i] += shift * x[i];
      len += y[i] * y[i];
    }
    len = std::sqrt(len);
    for (std::size_t i = 0; i < size; ++i) x[i] = y[i] / len;
  }
  best.iterations = max_iterations;
  throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iterations) + " iterations",
                         std::move(best));
}

inline DenseMatrix adjacency_matrix(const Graph& g) {
  DenseMatrix a(g.order());
  for (const Edge& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
  return a;
}

inline DenseMatrix to_dense(const DistanceMatrix& d) {
  DenseMatrix out(d.order());
  for (int u = 0; u < d.order(); ++u)
    for (int v = 0; v < d.order(); ++v) {
      const auto x = d.at(u, v);
      if (!x) throw ContractError("distance matrix has an unreachable pair (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
      out(u, v) = *x;
    }
  return out;
}

/// rho(G): largest eigenvalue of the distance matrix of a connected graph.
inline SpectralResult distance_spectral_radius(const Graph& g, double tol = kDefaultTolerance) {
  if (g.order() == 0) throw ContractError("distance spectral radius of the empty graph is undefined");
  const DistanceMatrix d = all_pairs_distances(g);
  if (!d.all_reachable()) throw ContractError("distance spectral radius requires a connected graph");
  return dominant_eigenvalue(to_dense(d), tol);
}

/// lambda(G): maximum over components of the component's Perron value.
inline SpectralResult adjacency_spectral_radius(const Graph& g, double tol = kDefaultTolerance) {
  SpectralResult out{0.0, Method::Eigensolver, 0.0, 0, std::nullopt};
  for (const Component& c : components(g)) {
    if (c.vertices.size() < 2) continue;
    const SpectralResult r = dominant_eigenvalue(adjacency_matrix(induced_subgraph(g, c.vertices)), tol);
    out.iterations += r.iterations;
    if (r.value > out.value) {
      out.value = r.value;
      out.residual = r.residual;
    }
  }
  return out;
}

}  // namespace dspec
