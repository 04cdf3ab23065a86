#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dspec/extremal.hpp"
#include "dspec/graph.hpp"
#include "dspec/phi_psi.hpp"
#include "dspec/spectral.hpp"
#include "oracles.hpp"

using namespace dspec;

namespace {

DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

std::vector<std::vector<int>> adjacency(const Graph& g) {
  std::vector<std::vector<int>> a(g.order(), std::vector<int>(g.order(), 0));
  for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

}  // namespace

TEST(DominantEigenvalue, CompleteGraph) {
  const auto r = distance_spectral_radius(complete_graph(4));
  EXPECT_NEAR(r.value, 3.0, 1e-12);
  EXPECT_EQ(r.method, Method::Eigensolver);
  ASSERT_TRUE(r.eigvec.has_value());
  for (double x : *r.eigvec) EXPECT_GT(x, 0.0);
}

TEST(DominantEigenvalue, PathOfThree) {
  // characteristic polynomial x^3 - 6x - 4 = (x + 2)(x^2 - 2x - 2)
  const auto r = dominant_eigenvalue(from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  EXPECT_NEAR(r.value, 1.0 + std::sqrt(3.0), 1e-12);
  EXPECT_LE(r.residual, 1e-12 * 4.0);
}

TEST(DominantEigenvalue, BipartiteAdjacency) {
  EXPECT_NEAR(dominant_eigenvalue(adjacency_matrix(cycle_graph(6))).value, 2.0, 1e-12);
}

TEST(DominantEigenvalue, Contracts) {
  EXPECT_THROW(dominant_eigenvalue(from_rows({{0, -1}, {-1, 0}})), ContractError);
  EXPECT_THROW(dominant_eigenvalue(from_rows({{0, 1}, {2, 0}})), ContractError);
  EXPECT_THROW(dominant_eigenvalue(DenseMatrix(0)), ContractError);
  EXPECT_THROW(dominant_eigenvalue(from_rows({{1}}), 0.0), ContractError);
  EXPECT_EQ(dominant_eigenvalue(from_rows({{0, 0}, {0, 0}})).value, 0.0);
}

TEST(DominantEigenvalue, IterationCap) {
  try {
    dominant_eigenvalue(from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), 1e-12, 2);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.best().iterations, 2);
    EXPECT_TRUE(e.best().eigvec.has_value());
  }
}

TEST(DominantEigenvalue, MatchesJacobi) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) rows[i][j] = rows[j][i] = static_cast<double>(rng() % 5);
    const double expected = oracle::jacobi_eigenvalues(rows).back();
    EXPECT_NEAR(dominant_eigenvalue(from_rows(rows)).value, expected, 1e-9 * std::max(1.0, expected));
  }
}

TEST(DistanceSpectralRadius, ReferenceValues) {
  EXPECT_NEAR(distance_spectral_radius(complement(config_graph(ComplementConfig::parse("P5+P6")))).value, 11.65442,
              1e-4);
  EXPECT_NEAR(distance_spectral_radius(complement(config_graph(ComplementConfig::parse("C3+P4+P4")))).value,
              11.65444, 1e-4);
  EXPECT_NEAR(distance_spectral_radius(complement(config_graph(ComplementConfig::parse("P3+P8")))).value, 11.65452,
              1e-4);
}

TEST(DistanceSpectralRadius, FrozenTightValues) {
  // Jacobi on the Floyd-Warshall distance matrix, see oracles.hpp.
  const double p5p6 = 11.654425356585719;
  const Graph g = complement(config_graph(ComplementConfig::parse("P5+P6")));
  EXPECT_NEAR(oracle::distance_rho(adjacency(g)), p5p6, 1e-10);
  EXPECT_NEAR(distance_spectral_radius(g).value, p5p6, 1e-10);
}

TEST(DistanceSpectralRadius, Disconnected) {
  EXPECT_THROW(distance_spectral_radius(Graph(3, {{0, 1}})), ContractError);
}

TEST(DistanceSpectralRadius, AtLeastNWithoutIsolatedComplementVertices) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    std::vector<int> cycles, paths;
    int left = n;
    while (left > 0) {
      int size = 2 + static_cast<int>(rng() % 5);
      if (left - size == 1 || size > left) size = left;
      if (size >= 3 && rng() % 3 == 0)
        cycles.push_back(size);
      else
        paths.push_back(size);
      left -= size;
    }
    const ComplementConfig config(cycles, paths);
    if (config.component_count() < 2) continue;
    const double rho = distance_spectral_radius(complement(config_graph(config))).value;
    EXPECT_GE(rho, n - 1e-12) << config.to_string();
  }
}

TEST(AdjacencySpectralRadius, Examples) {
  EXPECT_NEAR(adjacency_spectral_radius(cycle_graph(5)).value, 2.0, 1e-12);
  EXPECT_NEAR(adjacency_spectral_radius(config_graph(ComplementConfig({}, {4}))).value,
              2.0 * std::cos(M_PI / 5.0), 1e-12);
  EXPECT_NEAR(adjacency_spectral_radius(complete_graph(4)).value, 3.0, 1e-12);
  EXPECT_EQ(adjacency_spectral_radius(Graph(3, {})).value, 0.0);
}

TEST(AdjacencySpectralRadius, CyclePathUnionsAtMostTwo) {
  for (const char* text : {"C3+P4+P4", "P1+P2+C7", "C3+C3+C5", "P20+P1"})
    EXPECT_LE(adjacency_spectral_radius(config_graph(ComplementConfig::parse(text))).value, 2.0 + 1e-12);
}
