#include <gtest/gtest.h>

#include <cmath>

#include "pprloc/bipartite.hpp"
#include "support.hpp"

using namespace pprloc;
using namespace pprloc::testing;

TEST(Interp, ResolventCoefficients) {
  const auto c = interp_coeffs_resolvent(0.5);
  EXPECT_DOUBLE_EQ(c.c0, 0.5);
  EXPECT_DOUBLE_EQ(c.c1, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.c2, 1.0 / 6.0);
  const auto z = interp_coeffs_resolvent(0.0);
  EXPECT_EQ(z.c0, 1.0);
  EXPECT_EQ(z.c1, 0.0);
  EXPECT_EQ(z.c2, 0.0);
  for (int i = 1; i <= 9; ++i) {
    const auto k = interp_coeffs_resolvent(i / 10.0);
    EXPECT_NEAR(k.c0 + k.c1 + k.c2, 1.0, 1e-15);
  }
}

TEST(Interp, GeneralFormulaMatchesResolvent) {
  for (double a : {0.25, 0.5, 0.85}) {
    const auto g = interp_coeffs([a](double x) { return (1 - a) / (1 - a * x); });
    const auto r = interp_coeffs_resolvent(a);
    EXPECT_NEAR(g.c0, r.c0, 1e-15);
    EXPECT_NEAR(g.c1, r.c1, 1e-15);
    EXPECT_NEAR(g.c2, r.c2, 1e-15);
    for (double x : {-1.0, 0.0, 1.0}) EXPECT_NEAR(g(x), (1 - a) / (1 - a * x), 1e-15);
  }
}

TEST(Exact, K23) {
  const BipartiteSpec spec{5, 2, 0.5};
  const auto x = exact_ppr_vector(spec);
  EXPECT_NEAR(x.seed_value, 7.0 / 12.0, 1e-15);
  EXPECT_NEAR(x.same_side_value, 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(x.other_side_value, 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(x.sum(spec), 1.0, 1e-15);
  const auto y = exact_ppr_degree_normalized(spec);
  EXPECT_NEAR(y.seed_value, 7.0 / 36.0, 1e-15);
  EXPECT_NEAR(y.same_side_value, 1.0 / 36.0, 1e-15);
  EXPECT_NEAR(y.other_side_value, 1.0 / 18.0, 1e-15);
}

TEST(Exact, StarAndEdge) {
  const double a = 0.3;
  const auto star = exact_ppr_vector({11, 1, a});
  EXPECT_NEAR(star.seed_value, 1 / (1 + a), 1e-15);
  EXPECT_NEAR(star.other_side_value, a / (1 + a) / 10, 1e-15);
  EXPECT_NEAR(exact_ppr_degree_normalized({11, 1, a}).other_side_value, star.other_side_value, 1e-17);
  const auto edge = exact_ppr_vector({2, 1, a});
  EXPECT_NEAR(edge.seed_value, 1 / (1 + a), 1e-15);
  EXPECT_NEAR(edge.other_side_value, a / (1 + a), 1e-15);
}

TEST(Exact, DegreeNormalizedIsEntrywiseQuotient) {
  for (std::size_t n : {3, 7, 20})
    for (std::size_t k = 1; k < n; ++k) {
      const BipartiteSpec spec{n, k, 0.6};
      const auto x = exact_ppr_vector(spec).materialize(spec);
      const auto y = exact_ppr_degree_normalized(spec).materialize(spec);
      const auto deg = bipartite_degrees(spec);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], x[i] / static_cast<double>(deg[i]), 1e-16);
    }
}

TEST(Exact, MatchesPowerMethodAndPolynomial) {
  for (std::size_t n : {2, 3, 9, 40})
    for (std::size_t k : {std::size_t{1}, std::size_t{2}, n / 2}) {
      if (k < 1 || k >= n) continue;
      const Graph g = build_complete_bipartite(n, k);
      for (double a : {0.25, 0.5, 0.85}) {
        const BipartiteSpec spec{n, k, a};
        const auto x = exact_ppr_vector(spec).materialize(spec);
        EXPECT_LT(max_distance(x, power_method_reference({g, a, 0}, 1e-14)), 1e-10);
        const auto c = interp_coeffs_resolvent(a);
        const auto p1 = apply_walk(g, SparseVector::unit(0));
        const auto p2 = apply_walk(g, p1);
        std::vector<double> q(n, 0.0);
        q[0] += c.c0;
        for (const auto& [i, v] : p1) q[i] += c.c1 * v;
        for (const auto& [i, v] : p2) q[i] += c.c2 * v;
        EXPECT_LT(max_distance(x, q), 1e-12);
      }
    }
}

TEST(Build, SmallCases) {
  EXPECT_EQ(build_complete_bipartite(2, 1), undirected(2, {{0, 1}}));
  EXPECT_EQ(build_complete_bipartite(5, 2).degrees(), (std::vector<std::size_t>{3, 3, 2, 2, 2}));
  EXPECT_EQ(build_complete_bipartite(4, 2), undirected(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}));
  EXPECT_THROW(build_complete_bipartite(4, 4), std::invalid_argument);
  EXPECT_THROW(build_complete_bipartite(4, 0), std::invalid_argument);
}

TEST(MinNnz, BalancedFiftyFifty) {
  const BipartiteSpec spec{100, 50, 0.5};
  // seed + 50 far-side + 19 same-side: dropping 30 entries of 1/300 leaves error exactly 0.1
  EXPECT_EQ(bipartite_min_nnz(spec, 0.1, Norm::L1), 70u);
  EXPECT_EQ(bipartite_constructive_nnz(spec, 0.1, Norm::L1), 71u);
  EXPECT_EQ(bipartite_min_nnz(spec, 0.1, Norm::L2), 1u);
  const double l2 = std::sqrt((1.0 / 9.0) / 50 + (1.0 / 36.0) / 50);
  EXPECT_NEAR(l2, 0.0527, 1e-4);
}

TEST(MinNnz, BalancedDegreeNormalizedL1) {
  const double a = 0.5, eps = 0.01;
  const std::size_t n = 2 * static_cast<std::size_t>(std::ceil(a / eps));
  EXPECT_EQ(bipartite_min_nnz({n, n / 2, a}, eps, Norm::DegL1), 1u);
  EXPECT_GT(bipartite_min_nnz({n / 4, n / 8, a}, eps, Norm::DegL1), 1u);
}

TEST(MinNnz, AgreesWithGenericGreedy) {
  for (std::size_t n : {2, 5, 17, 64, 101})
    for (std::size_t k = 1; k < n; k += std::max<std::size_t>(1, n / 7))
      for (double a : {0.25, 0.5, 0.85}) {
        const BipartiteSpec spec{n, k, a};
        const auto x = exact_ppr_vector(spec).materialize(spec);
        const auto deg = bipartite_degrees(spec);
        for (Norm norm : {Norm::L1, Norm::L2, Norm::DegL1, Norm::DegL2})
          for (double eps : {0.2, 0.05, 0.01, 1e-3}) {
            const auto closed = bipartite_min_nnz(spec, eps, norm);
            const auto generic = min_nnz_for_accuracy(x, eps, norm, deg);
            EXPECT_LE(std::abs(static_cast<long>(closed) - static_cast<long>(generic)), 1)
                << n << ' ' << k << ' ' << a << ' ' << to_string(norm) << ' ' << eps;
            const auto cons = bipartite_constructive_nnz(spec, eps, norm);
            EXPECT_LE(closed, cons);
            EXPECT_LE(cons, closed + 1);
          }
      }
}

TEST(LowerBound, Values) {
  EXPECT_NEAR(prop1_lower_bound(100, 0.5, 0.1), 40.0, 1e-12);
  EXPECT_THROW(prop1_lower_bound(100, 0.5, 0.25 / 1.5), std::invalid_argument);
  for (std::size_t k = 1; k < 100; ++k)
    EXPECT_GE(static_cast<double>(bipartite_min_nnz({100, k, 0.5}, 0.05, Norm::L1)),
              prop1_lower_bound(100, 0.5, 0.05))
        << "k = " << k;
}

TEST(Star, ResidualDiagnostics) {
  auto d = star_residual_diagnostics(101, 0.5, 0.01);
  EXPECT_DOUBLE_EQ(d.residual_l1, 0.5);
  EXPECT_DOUBLE_EQ(d.residual_l2, 0.5);
  EXPECT_DOUBLE_EQ(d.residual_deg_l1, 0.005);
  EXPECT_DOUBLE_EQ(d.residual_deg_l2, 0.005);
  d = star_residual_diagnostics(2, 0.5, 0.01);
  EXPECT_DOUBLE_EQ(d.residual_deg_l1, 0.5);
  d = star_residual_diagnostics(10000, 0.5, 0.01);
  EXPECT_NEAR(d.residual_deg_l1, 5e-5, 1e-8);
  EXPECT_NEAR(static_cast<double>(d.solution_l1_min_nnz) / 10000, 0.97, 0.005);
}

TEST(Growth, Classification) {
  const std::vector<std::size_t> lin = {10, 20, 40, 80, 160}, flat = {3, 3, 3, 3}, shrink = {50, 20, 1, 1, 1};
  EXPECT_EQ(classify_growth(lin), Growth::Linear);
  EXPECT_EQ(classify_growth(flat), Growth::Bounded);
  EXPECT_EQ(classify_growth(shrink), Growth::Bounded);
  const std::vector<std::size_t> sqrtish = {10, 14, 20, 28};
  EXPECT_EQ(classify_growth(sqrtish), Growth::Unclear);
}

TEST(Growth, LocalApproxTable) {
  std::vector<std::size_t> ns;
  for (int e = 6; e <= 13; ++e) ns.push_back(std::size_t{1} << e);
  const auto rows = local_approx_table(ns, 0.5, 0.01);
  ASSERT_EQ(rows.size(), 8u);
  auto find = [&](bool dense, Norm norm) {
    for (const auto& r : rows)
      if (r.dense == dense && r.norm == norm) return r.local;
    return std::optional<bool>{};
  };
  EXPECT_EQ(find(false, Norm::L1), false);
  EXPECT_EQ(find(false, Norm::DegL1), false);
  EXPECT_EQ(find(false, Norm::L2), true);
  EXPECT_EQ(find(false, Norm::DegL2), true);
  EXPECT_EQ(find(true, Norm::L1), false);
  EXPECT_EQ(find(true, Norm::DegL1), true);
  EXPECT_EQ(find(true, Norm::L2), true);
  EXPECT_EQ(find(true, Norm::DegL2), true);
}
