#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pprloc/graph.hpp"
#include "pprloc/max_queue.hpp"
#include "pprloc/sparse_vector.hpp"

namespace pprloc {

// Seeded PageRank: (I - alpha P) x = (1 - alpha) e_seed.
struct PprProblem {
  const Graph& graph;
  double alpha;
  NodeId seed;

  void validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (seed >= graph.num_nodes()) throw std::invalid_argument("seed node out of range");
    if (alpha > 0.0 && graph.degree(seed) == 0) throw std::invalid_argument("seed node has degree 0");
  }
};

// Truncated power series x_t = (1-alpha) sum_{i<=t} alpha^i P^i e_s, which is
// the iterate of x <- alpha P x + (1-alpha) e_s started at (1-alpha) e_s. The
// omitted mass is exactly alpha^{t+1}, so iteration stops as soon as that a
// priori bound is within `tol`.
inline std::vector<double> power_method_reference(const PprProblem& prob, double tol,
                                                  std::size_t* iterations = nullptr) {
  prob.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Graph& g = prob.graph;
  const std::size_t n = g.num_nodes();
  std::vector<double> x(n, 0.0), term(n, 0.0), next(n, 0.0);
  term[prob.seed] = 1.0 - prob.alpha;
  x[prob.seed] = term[prob.seed];
  double tail = prob.alpha;
  std::size_t t = 0;
  while (tail > tol) {
    apply_walk_dense(g, term, next);
    for (std::size_t i = 0; i < n; ++i) {
      term[i] = prob.alpha * next[i];
      x[i] += term[i];
    }
    tail *= prob.alpha;
    ++t;
  }
  if (iterations) *iterations = t;
  return x;
}

struct SolveOptions {
  double eps = 1e-4;
  std::size_t max_iters = std::numeric_limits<std::size_t>::max();
  // Per-step audit data: exact residual norms (O(support) per step), step sizes
  // and minimum entries.
  bool audit = false;
  // Residual nonzero count Z(t) after every step (cheap).
  bool record_fill = false;
};

struct SolveReport {
  SparseVector solution;
  SparseVector residual;
  std::size_t iterations = 0;
  bool converged = false;
  double residual_norm = 0.0;
  std::size_t nnz_solution = 0;

  std::vector<double> residual_norm_history;  // ||r^(k)||_1, k = 0..iterations (audit)
  std::vector<double> step_sizes;             // m_k (audit)
  std::vector<std::size_t> residual_nnz;      // Z(k), k = 0..iterations (record_fill)
  double min_entry = 0.0;                     // smallest x or r entry ever stored (audit)
};

// Residual entries below this are flushed to zero.
inline constexpr double kResidualFlush = 1e-300;

// Gauss-Southwell relaxation from x0 = (1-alpha)(I + alpha P) e_s with
// r0 = (1-alpha) alpha^2 P^2 e_s. Each step moves the largest residual entry
// (ties: smallest id) into the solution and spreads alpha times it over the
// node's neighbors. Stops once ||r||_1 <= (1-alpha) eps, which certifies
// ||x - x_hat||_1 <= eps. Since ||r0||_1 = (1-alpha) alpha^2 exactly, alpha^2 <= eps
// stops before the first step.
inline SolveReport gauss_southwell_solve(const PprProblem& prob, const SolveOptions& opt) {
  prob.validate();
  if (!(opt.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Graph& g = prob.graph;
  const double alpha = prob.alpha;
  const std::size_t n = g.num_nodes();
  const NodeId s = prob.seed;

  std::vector<double> x(n, 0.0), r(n, 0.0);
  std::vector<NodeId> x_support, r_support;
  std::vector<char> in_x(n, 0), in_r(n, 0);
  auto touch_x = [&](NodeId v) {
    if (!in_x[v]) {
      in_x[v] = 1;
      x_support.push_back(v);
    }
  };
  auto touch_r = [&](NodeId v) {
    if (!in_r[v]) {
      in_r[v] = 1;
      r_support.push_back(v);
    }
  };

  SolveReport rep;
  double min_entry = std::numeric_limits<double>::infinity();
  std::size_t z = 0;  // nonzeros in r

  x[s] = 1.0 - alpha;
  touch_x(s);
  if (alpha > 0.0) {
    const double ds = static_cast<double>(g.degree(s));
    for (NodeId j : g.neighbors(s)) {
      x[j] += (1.0 - alpha) * alpha / ds;
      touch_x(j);
      const double dj = static_cast<double>(g.degree(j));
      const double share = (1.0 - alpha) * alpha * alpha / (ds * dj);
      for (NodeId k : g.neighbors(j)) {
        r[k] += share;
        touch_r(k);
      }
    }
  }

  LazyMaxQueue queue(r);
  double running = 0.0;
  for (NodeId v : r_support) {
    if (r[v] < kResidualFlush) r[v] = 0.0;
    if (r[v] > 0.0) {
      ++z;
      queue.push(v, r[v]);
    }
    running += r[v];
  }

  auto exact_norm = [&] {
    double sum = 0.0;
    for (NodeId v : r_support) sum += r[v];
    return sum;
  };
  auto track_min = [&] {
    for (NodeId v : x_support) min_entry = std::min(min_entry, x[v]);
    for (NodeId v : r_support) min_entry = std::min(min_entry, r[v]);
  };

  if (opt.audit) {
    running = exact_norm();
    rep.residual_norm_history.push_back(running);
    track_min();
  }
  if (opt.record_fill) rep.residual_nnz.push_back(z);

  const double threshold = (1.0 - alpha) * opt.eps;
  const bool warm_start_certified = alpha * alpha <= opt.eps;
  std::size_t k = 0;
  while (true) {
    if (warm_start_certified) {
      rep.converged = true;
      break;
    }
    if (running <= threshold) {
      running = exact_norm();
      if (running <= threshold) {
        rep.converged = true;
        break;
      }
    }
    if (k >= opt.max_iters) break;
    const auto top = queue.top();
    if (!top) {
      running = exact_norm();
      rep.converged = running <= threshold;
      break;
    }
    const NodeId j = *top;
    const double m = r[j];
    x[j] += m;
    touch_x(j);
    r[j] = 0.0;
    --z;
    running -= m;
    const double share = m * alpha / static_cast<double>(g.degree(j));
    for (NodeId v : g.neighbors(j)) {
      const double old = r[v];
      double now = old + share;
      if (now < kResidualFlush) now = 0.0;
      r[v] = now;
      touch_r(v);
      if (old == 0.0 && now > 0.0) ++z;
      running += now - old;
      if (now > 0.0) queue.push(v, now);
      if (opt.audit) min_entry = std::min(min_entry, now);
    }
    ++k;
    if (opt.audit) {
      running = exact_norm();
      rep.residual_norm_history.push_back(running);
      rep.step_sizes.push_back(m);
      min_entry = std::min(min_entry, x[j]);
    }
    if (opt.record_fill) rep.residual_nnz.push_back(z);
  }

  rep.iterations = k;
  rep.residual_norm = running;
  for (NodeId v : x_support)
    if (x[v] != 0.0) rep.solution.set(v, x[v]);
  for (NodeId v : r_support)
    if (r[v] != 0.0) rep.residual.set(v, r[v]);
  rep.nnz_solution = rep.solution.nnz();
  if (opt.audit) rep.min_entry = std::isinf(min_entry) ? 0.0 : min_entry;
  return rep;
}

}  // namespace pprloc
