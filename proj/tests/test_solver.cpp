#include <gtest/gtest.h>

#include <algorithm>

#include "pprloc/graphgen.hpp"
#include "pprloc/max_queue.hpp"
#include "pprloc/solver.hpp"
#include "support.hpp"

using namespace pprloc;
using namespace pprloc::testing;

// Direct dense solve of (I - alpha P) x = (1 - alpha) e_s by Gaussian elimination.
static std::vector<double> dense_solve(const Graph& g, double alpha, NodeId s) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
  for (std::size_t j = 0; j < n; ++j)
    for (NodeId i : g.neighbors(static_cast<NodeId>(j))) a[i][j] -= alpha / static_cast<double>(g.degree(static_cast<NodeId>(j)));
  a[s][n] = 1.0 - alpha;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

TEST(PowerMethod, ClosedForms) {
  const Graph edge = undirected(2, {{0, 1}});
  auto x = power_method_reference({edge, 0.5, 0}, 1e-14);
  EXPECT_NEAR(x[0], 2.0 / 3.0, 1e-13);
  EXPECT_NEAR(x[1], 1.0 / 3.0, 1e-13);

  const Graph star = star_graph(5);
  x = power_method_reference({star, 0.5, 0}, 1e-14);
  EXPECT_NEAR(x[0], 2.0 / 3.0, 1e-13);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(x[i], 1.0 / 12.0, 1e-13);

  x = power_method_reference({star, 0.0, 2}, 1e-12);
  EXPECT_EQ(x, (std::vector<double>{0, 0, 1, 0, 0}));
}

TEST(PowerMethod, ToleranceAgainstDirectSolve) {
  Rng rng(4);
  for (double alpha : {0.25, 0.5, 0.85, 0.99}) {
    const Graph g = random_connected(40, 0.1, rng);
    std::size_t iters = 0;
    const auto x = power_method_reference({g, alpha, 3}, 1e-12, &iters);
    EXPECT_LE(l1_distance(x, dense_solve(g, alpha, 3)), 1e-11);
    double sum = 0;
    for (double v : x) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_LE(std::pow(alpha, iters + 1), 1e-12);
    EXPECT_GT(std::pow(alpha, iters), 1e-12);
  }
}

TEST(PowerMethod, RejectsBadInput) {
  const Graph g = undirected(3, {{0, 1}});
  EXPECT_THROW(power_method_reference({g, 0.5, 2}, 1e-8), std::invalid_argument);
  EXPECT_THROW(power_method_reference({g, 1.0, 0}, 1e-8), std::invalid_argument);
  EXPECT_THROW(power_method_reference({g, 0.5, 5}, 1e-8), std::invalid_argument);
  EXPECT_THROW(power_method_reference({g, 0.5, 0}, 0.0), std::invalid_argument);
}

TEST(GaussSouthwell, HandSimulationNoStep) {
  const Graph edge = undirected(2, {{0, 1}});
  SolveOptions opt;
  opt.eps = 0.5;
  const auto rep = gauss_southwell_solve({edge, 0.5, 0}, opt);
  EXPECT_EQ(rep.iterations, 0u);
  EXPECT_TRUE(rep.converged);
  EXPECT_DOUBLE_EQ(rep.solution.get(0), 0.5);
  EXPECT_DOUBLE_EQ(rep.solution.get(1), 0.25);
  EXPECT_DOUBLE_EQ(rep.residual.get(0), 0.125);
  EXPECT_DOUBLE_EQ(rep.residual_norm, 0.125);
}

TEST(GaussSouthwell, HandSimulationOneStep) {
  const Graph edge = undirected(2, {{0, 1}});
  SolveOptions opt;
  opt.eps = 0.2;
  opt.audit = true;
  const auto rep = gauss_southwell_solve({edge, 0.5, 0}, opt);
  EXPECT_EQ(rep.iterations, 1u);
  EXPECT_DOUBLE_EQ(rep.solution.get(0), 0.625);
  EXPECT_DOUBLE_EQ(rep.solution.get(1), 0.25);
  EXPECT_DOUBLE_EQ(rep.residual.get(0), 0.0);
  EXPECT_DOUBLE_EQ(rep.residual.get(1), 0.0625);
  ASSERT_EQ(rep.step_sizes.size(), 1u);
  EXPECT_DOUBLE_EQ(rep.step_sizes[0], 0.125);
  EXPECT_EQ(rep.residual_norm_history, (std::vector<double>{0.125, 0.0625}));
}

TEST(GaussSouthwell, WarmStartAlreadyAccurate) {
  Rng rng(8);
  const Graph g = random_connected(200, 0.02, rng);
  SolveOptions opt;
  opt.eps = 0.1;
  const auto rep = gauss_southwell_solve({g, 0.25, 7}, opt);
  EXPECT_EQ(rep.iterations, 0u);
  EXPECT_NEAR(rep.residual_norm, 0.75 * 0.0625, 1e-15);
  const auto x = power_method_reference({g, 0.25, 7}, 1e-13);
  EXPECT_LE(l1_distance(x, rep.solution.to_dense(200)), 0.1);
}

TEST(GaussSouthwell, InvariantsOnRandomGraphs) {
  Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = random_connected(300, 0.015, rng);
    for (double alpha : {0.5, 0.85}) {
      SolveOptions opt;
      opt.eps = 1e-5;
      opt.audit = true;
      const PprProblem prob{g, alpha, static_cast<NodeId>(trial)};
      const auto rep = gauss_southwell_solve(prob, opt);
      ASSERT_TRUE(rep.converged);
      for (std::size_t k = 0; k < rep.iterations; ++k) {
        const double predicted = rep.residual_norm_history[k] - rep.step_sizes[k] * (1 - alpha);
        EXPECT_NEAR(rep.residual_norm_history[k + 1], predicted, 1e-12);
        EXPECT_LT(rep.residual_norm_history[k + 1], rep.residual_norm_history[k]);
      }
      EXPECT_GE(rep.min_entry, -1e-15);
      EXPECT_GE(rep.residual.min_value(), 0.0);
      EXPECT_NEAR(rep.residual.sum(), rep.residual_norm, 1e-14);
      EXPECT_EQ(rep.nnz_solution, rep.solution.nnz());
      const auto x = power_method_reference(prob, 1e-12);
      const double err = l1_distance(x, rep.solution.to_dense(g.num_nodes()));
      EXPECT_LE(err, rep.residual_norm / (1 - alpha) + 1e-12);
      EXPECT_LT(err, opt.eps);
    }
  }
}

TEST(GaussSouthwell, ResidualMatchesDefinition) {
  Rng rng(2);
  const Graph g = random_connected(80, 0.05, rng);
  SolveOptions opt;
  opt.eps = 1e-3;
  const PprProblem prob{g, 0.7, 11};
  const auto rep = gauss_southwell_solve(prob, opt);
  const auto xh = rep.solution.to_dense(80);
  std::vector<double> px(80);
  apply_walk_dense(g, xh, px);
  std::vector<double> r(80);
  for (std::size_t i = 0; i < 80; ++i) r[i] = (i == 11 ? 0.3 : 0.0) - xh[i] + 0.7 * px[i];
  EXPECT_LT(max_distance(r, rep.residual.to_dense(80)), 1e-14);
}

TEST(GaussSouthwell, MaxItersGivesPartialReport) {
  Rng rng(6);
  const Graph g = random_connected(100, 0.05, rng);
  SolveOptions opt;
  opt.eps = 1e-8;
  opt.max_iters = 5;
  const auto rep = gauss_southwell_solve({g, 0.85, 0}, opt);
  EXPECT_EQ(rep.iterations, 5u);
  EXPECT_FALSE(rep.converged);
}

TEST(GaussSouthwell, FillRecordAndStepBound) {
  const auto seq = repair_parity(generate_rank_skewed(3000, 55, 2, 0.5));
  const Graph g = generate_exact_degree(seq, {3, 20}).graph;
  SolveOptions opt;
  opt.eps = 1e-3;
  opt.record_fill = true;
  const auto rep = gauss_southwell_solve({g, 0.5, g.max_degree_node()}, opt);
  EXPECT_EQ(rep.residual_nnz.size(), rep.iterations + 1);
  // iterations <= C_p (alpha^2/eps)^{delta/(1-alpha)} / delta
  const double d = static_cast<double>(certify_max_degree(seq, 2, 0.5)), cp = d * (1 + (std::pow(d, 1.0) - 1) / 0.5);
  EXPECT_LE(static_cast<double>(rep.iterations), cp * std::pow(0.25 / 1e-3, 4.0) / 2);
}

TEST(MaxQueue, TieAndUpdate) {
  std::vector<double> r = {0.3, 0.3, 0.1};
  LazyMaxQueue q(r);
  for (NodeId i = 0; i < 3; ++i) q.push(i, r[i]);
  EXPECT_EQ(q.top(), 0u);
  r[0] = 0.0;
  EXPECT_EQ(q.top(), 1u);
  r[1] = 0.05;
  q.push(1, 0.05);
  EXPECT_EQ(q.top(), 2u);
  r[2] = 0.0;
  EXPECT_EQ(q.top(), 1u);
  r[1] = 0.0;
  EXPECT_EQ(q.top(), std::nullopt);
}

TEST(MaxQueue, FuzzAgainstLinearScan) {
  Rng rng(99);
  const std::size_t n = 50;
  std::vector<double> r(n, 0.0);
  LazyMaxQueue q(r);
  for (NodeId i = 0; i < n; ++i) {
    r[i] = static_cast<double>(rng.below(20)) / 8.0;  // many ties
    q.push(i, r[i]);
  }
  for (int step = 0; step < 10000; ++step) {
    std::optional<NodeId> expect;
    for (NodeId i = 0; i < n; ++i)
      if (r[i] > 0 && (!expect || r[i] > r[*expect])) expect = i;
    ASSERT_EQ(q.top(), expect) << "step " << step;
    if (expect) r[*expect] = 0.0;
    for (int touch = 0; touch < 3; ++touch) {
      const auto v = static_cast<NodeId>(rng.below(n));
      r[v] += static_cast<double>(rng.below(6)) / 8.0;
      q.push(v, r[v]);
    }
  }
}
