#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>

#include "pprloc/solver.hpp"

namespace pprloc {

// Sparsity bounds for Gauss-Southwell on graphs with a (d, delta, p)
// rank-skewed degree sequence. All logarithms are natural.

struct BoundInputs {
  double n = 0.0;
  double d = 1.0;
  double delta = 2.0;
  double p = 1.0;
  double alpha = 0.5;
  double eps = 1e-2;

  void validate() const {
    if (!(n >= 1.0)) throw std::invalid_argument("n must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
    if (!(d >= 1.0)) throw std::invalid_argument("d must be at least 1");
    if (!(delta >= 1.0 && delta <= d)) throw std::invalid_argument("need 1 <= delta <= d");
  }
};

struct BoundReport {
  double cp = 0.0;
  double n_thm1 = 0.0;                // 1 + d + C_p (alpha^2/eps)^{delta/(1-alpha)} / delta
  std::optional<double> n_thm2;       // 1 + d + C_p (alpha^2/eps)^{(delta-1)/(1-alpha)} / (delta-1)
  double n_final = 0.0;               // min(n, ceil(N)) of the bound this report is for
  double k_steps = 0.0;               // relaxation steps sufficient for eps accuracy
  bool trivial = false;               // n_final == n
  bool delta_substituted = false;     // delta = 1 raised to 2
  double delta_used = 0.0;
};

// C_p = d(1 + log d) for p = 1, else d(1 + (d^{1/p - 1} - 1)/(1 - p)).
inline double compute_cp(double d, double p) {
  if (!(d >= 1.0) || !(p > 0.0)) throw std::invalid_argument("compute_cp needs d >= 1 and p > 0");
  if (std::abs(p - 1.0) < 1e-12) return d * (1.0 + std::log(d));
  return d * (1.0 + std::expm1((1.0 / p - 1.0) * std::log(d)) / (1.0 - p));
}

// General-directed bound. delta = 1 is replaced by 2 (any upper bound on the
// minimum degree is admissible).
inline BoundReport bound_thm1(const BoundInputs& in) {
  in.validate();
  BoundReport rep;
  double delta = in.delta;
  if (delta < 2.0) {
    delta = 2.0;
    rep.delta_substituted = true;
  }
  rep.delta_used = delta;
  rep.cp = compute_cp(in.d, in.p);
  const double growth = std::pow(in.alpha * in.alpha / in.eps, delta / (1.0 - in.alpha));
  rep.n_thm1 = 1.0 + in.d + rep.cp * growth / delta;
  rep.k_steps = std::max(0.0, rep.cp * (growth - 1.0) / delta);
  if (delta >= 2.0 && !rep.delta_substituted) {
    rep.n_thm2 = 1.0 + in.d + rep.cp * std::pow(in.alpha * in.alpha / in.eps, (delta - 1.0) / (1.0 - in.alpha)) /
                                  (delta - 1.0);
  }
  rep.n_final = std::min(in.n, std::ceil(rep.n_thm1));
  rep.trivial = rep.n_final >= in.n;
  return rep;
}

// Undirected bound; requires delta >= 2.
inline BoundReport bound_thm2(const BoundInputs& in) {
  in.validate();
  if (in.delta < 2.0)
    throw std::invalid_argument("undirected bound needs delta >= 2; use the general bound, which raises delta = 1 to 2");
  BoundReport rep;
  rep.delta_used = in.delta;
  rep.cp = compute_cp(in.d, in.p);
  const double ratio = in.alpha * in.alpha / in.eps;
  const double e1 = in.delta / (1.0 - in.alpha);
  const double e2 = (in.delta - 1.0) / (1.0 - in.alpha);
  rep.n_thm1 = 1.0 + in.d + rep.cp * std::pow(ratio, e1) / in.delta;
  const double growth = std::pow(ratio, e2);
  rep.n_thm2 = 1.0 + in.d + rep.cp * growth / (in.delta - 1.0);
  rep.k_steps = std::max(0.0, rep.cp * (growth - 1.0) / (in.delta - 1.0));
  rep.n_final = std::min(in.n, std::ceil(*rep.n_thm2));
  rep.trivial = rep.n_final >= in.n;
  return rep;
}

// Residual fill-in bound Z(t) <= C_p + delta t, or C_p + (delta - 1) t for
// undirected graphs.
inline double fillin_bound(double t, const BoundInputs& in, bool undirected) {
  if (t < 0.0) throw std::invalid_argument("step index must be nonnegative");
  const double rate = undirected ? in.delta - 1.0 : in.delta;
  return compute_cp(in.d, in.p) + rate * t;
}

struct FillinAudit {
  std::size_t steps_run = 0;
  double max_excess = 0.0;   // max_t Z(t) - bound(t); <= 0 on conforming graphs
  std::size_t worst_step = 0;
  std::size_t violations = 0;
  std::size_t max_fill = 0;  // max_t Z(t)
};

// Runs up to `steps` relaxation steps and compares the residual nonzero count
// against the fill-in bound at every step, including t = 0.
inline FillinAudit empirical_fillin_audit(const PprProblem& prob, std::size_t steps, const BoundInputs& in,
                                          bool undirected, double eps = 1e-300) {
  SolveOptions opt;
  opt.eps = eps;
  opt.max_iters = steps;
  opt.record_fill = true;
  const auto rep = gauss_southwell_solve(prob, opt);
  FillinAudit audit;
  audit.steps_run = rep.iterations;
  audit.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < rep.residual_nnz.size(); ++t) {
    const double excess = static_cast<double>(rep.residual_nnz[t]) - fillin_bound(static_cast<double>(t), in, undirected);
    if (excess > audit.max_excess) {
      audit.max_excess = excess;
      audit.worst_step = t;
    }
    if (excess > 0.0) ++audit.violations;
    audit.max_fill = std::max(audit.max_fill, rep.residual_nnz[t]);
  }
  return audit;
}

}  // namespace pprloc
