#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dspec/extremal.hpp"
#include "dspec/phi_psi.hpp"
#include "oracles.hpp"

using namespace dspec;

TEST(Params, MatchScan) {
  for (long long m = 3; m <= 500; ++m) {
    const auto spec = params_from_m(m);
    const auto [n, s] = oracle::params_by_scan(m);
    EXPECT_EQ(spec.n, n) << m;
    EXPECT_EQ(spec.s, s) << m;
    EXPECT_GE(spec.s, 1);
    EXPECT_LE(spec.s, spec.n - 1);
    EXPECT_EQ(spec.c, spec.s + 1);
    EXPECT_EQ(spec.q * spec.c + spec.r, spec.n);
    EXPECT_LT(spec.r, spec.c);
  }
}

TEST(Params, Examples) {
  const auto a = params_from_m(46);
  EXPECT_EQ(a.n, 11);
  EXPECT_EQ(a.s, 1);
  EXPECT_EQ(a.parts, (std::vector<int>{5, 6}));
  const auto b = params_from_m(6);
  EXPECT_EQ(b.n, 4);
  EXPECT_EQ(b.s, 3);
  EXPECT_EQ(b.complement_edges(), 0);
  const auto big = params_from_m(1'000'000'000'000LL);
  EXPECT_LT(binom2(big.n - 1), 1'000'000'000'000LL);
  EXPECT_GE(binom2(big.n), 1'000'000'000'000LL);
}

TEST(Params, Domain) {
  EXPECT_THROW(params_from_m(2), DomainError);
  EXPECT_THROW(params_from_m(-5), DomainError);
  EXPECT_THROW(spec_from_ns(5, 5), DomainError);
  EXPECT_THROW(spec_from_ns(1, 0), DomainError);
}

TEST(BalancedPartition, Examples) {
  EXPECT_EQ(balanced_partition(11, 2), (std::vector<int>{5, 6}));
  EXPECT_EQ(balanced_partition(13, 3), (std::vector<int>{4, 4, 5}));
  EXPECT_EQ(balanced_partition(12, 3), (std::vector<int>{4, 4, 4}));
  EXPECT_EQ(balanced_partition(5, 5), (std::vector<int>{1, 1, 1, 1, 1}));
  EXPECT_THROW(balanced_partition(3, 4), DomainError);
  EXPECT_THROW(balanced_partition(3, 0), DomainError);
  EXPECT_TRUE(is_balanced(balanced_partition(100, 7)));
  EXPECT_FALSE(is_balanced(std::vector<int>{3, 5}));
}

TEST(ExtremalGraph, EdgeCount) {
  for (long long m = 3; m <= 200; ++m) {
    const auto spec = params_from_m(m);
    const Graph g = build_extremal_graph(spec);
    EXPECT_EQ(static_cast<long long>(g.size()), m) << m;
    EXPECT_TRUE(is_connected(g));
  }
}

TEST(ExtremalGraph, CompleteCase) {
  const auto spec = spec_from_ns(5, 0);
  EXPECT_TRUE(spec.complete_graph_case());
  const Graph g = build_extremal_graph(spec);
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.size(), 6u);
}

TEST(ExtremalGraph, ComplementIsBalancedPaths) {
  const auto spec = spec_from_ns(13, 2);
  const auto config = config_from_graph(complement(build_extremal_graph(spec)));
  ASSERT_TRUE(config.has_value());
  EXPECT_EQ(config->to_string(), "P4+P4+P5");
}

TEST(Rebalance, SingleStep) {
  const auto out = rebalance_step(std::vector<int>{3, 8});
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{4, 7}));
  EXPECT_EQ(square_sum(std::vector<int>{3, 8}) - square_sum(out), 8);
  EXPECT_THROW(rebalance_step(std::vector<int>{4, 5}, 1, 0), ContractError);
  EXPECT_THROW(rebalance_step(std::vector<int>{1, 5}, 1, 0), ContractError);
  EXPECT_THROW(rebalance_step(std::vector<int>{2, 5}, 0, 0), ContractError);
}

TEST(Rebalance, Fixpoint) {
  const auto trace = rebalance_to_fixpoint(std::vector<int>{2, 2, 9});
  std::vector<int> last = trace.states.back();
  std::sort(last.begin(), last.end());
  EXPECT_EQ(last, (std::vector<int>{4, 4, 5}));
  EXPECT_EQ(trace.square_sums.front(), 89);
  EXPECT_EQ(trace.square_sums.back(), 57);
  for (std::size_t i = 1; i < trace.square_sums.size(); ++i)
    EXPECT_LE(trace.square_sums[i] - trace.square_sums[i - 1], -2);
}

TEST(Rebalance, RandomFixpoints) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int c = 2 + static_cast<int>(rng() % 6);
    std::vector<int> parts;
    for (int i = 0; i < c; ++i) parts.push_back(2 + static_cast<int>(rng() % 15));
    int total = 0;
    for (int k : parts) total += k;
    const auto trace = rebalance_to_fixpoint(parts);
    std::vector<int> last = trace.states.back();
    std::sort(last.begin(), last.end());
    EXPECT_EQ(last, balanced_partition(total, c));
    for (std::size_t i = 1; i < trace.square_sums.size(); ++i)
      EXPECT_LE(trace.square_sums[i] - trace.square_sums[i - 1], -2);
  }
}

TEST(Dominance, Grid) {
  for (int c = 1; c <= 10; ++c)
    for (int n1 = c; n1 <= 60; ++n1)
      for (int n2 = n1; n2 <= 60; ++n2) EXPECT_TRUE(partition_dominance(n1, n2, c)) << n1 << " " << n2 << " " << c;
  EXPECT_FALSE(partition_dominance(9, 8, 2));
  EXPECT_THROW(partition_dominance(2, 5, 3), DomainError);
}
