#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pprloc/graph.hpp"
#include "pprloc/localization.hpp"

namespace pprloc {

// Closed-form seeded PageRank on complete-bipartite graphs K_{k,n-k}.
//
// The walk matrix of K_{k,n-k} has spectrum {-1, 0, 1}, so any f(P) equals the
// quadratic q(P) interpolating f on those three points. For the resolvent
// f(x) = (1-alpha)/(1 - alpha x) this gives
//   x = (1-alpha) e_j + c1 P e_j + c2 P^2 e_j,
// where P e_j is uniform over the opposite side and P^2 e_j uniform over the
// seed's own side.
//
// Node layout used throughout: nodes 0..k-1 form the seed's side (seed = 0),
// nodes k..n-1 the opposite side.

struct BipartiteSpec {
  std::size_t n = 2;
  std::size_t k = 1;  // size of the seed's side
  double alpha = 0.5;

  std::size_t other() const { return n - k; }

  void validate() const {
    if (k < 1 || k + 1 > n) throw std::invalid_argument("need 1 <= k <= n-1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  }
};

struct InterpCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const { return c0 + c1 * x + c2 * x * x; }
};

// Quadratic through (-1, f(-1)), (0, f(0)), (1, f(1)).
inline InterpCoeffs interp_coeffs(double f_minus1, double f_0, double f_1) {
  return {f_0, 0.5 * (f_1 - f_minus1), 0.5 * (f_1 + f_minus1 - 2.0 * f_0)};
}

inline InterpCoeffs interp_coeffs(const std::function<double(double)>& f) { return interp_coeffs(f(-1.0), f(0.0), f(1.0)); }

// c0 = 1-alpha, c1 = alpha/(1+alpha), c2 = alpha^2/(1+alpha).
inline InterpCoeffs interp_coeffs_resolvent(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  return {1.0 - alpha, alpha / (1.0 + alpha), alpha * alpha / (1.0 + alpha)};
}

// Vector with three distinct values: the seed, the other k-1 nodes on the seed's
// side, and the n-k nodes on the opposite side.
struct BlockVector {
  double seed_value = 0.0;
  double same_side_value = 0.0;
  double other_side_value = 0.0;

  std::vector<double> materialize(const BipartiteSpec& spec) const {
    std::vector<double> x(spec.n, other_side_value);
    std::fill(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(spec.k), same_side_value);
    x[0] = seed_value;
    return x;
  }

  double sum(const BipartiteSpec& spec) const {
    return seed_value + static_cast<double>(spec.k - 1) * same_side_value +
           static_cast<double>(spec.other()) * other_side_value;
  }
};

inline BlockVector exact_ppr_vector(const BipartiteSpec& spec) {
  spec.validate();
  const auto c = interp_coeffs_resolvent(spec.alpha);
  const double k = static_cast<double>(spec.k);
  const double o = static_cast<double>(spec.other());
  return {c.c0 + c.c2 / k, c.c2 / k, c.c1 / o};
}

// D^-1 x: seed-side nodes have degree n-k, opposite-side nodes degree k.
inline BlockVector exact_ppr_degree_normalized(const BipartiteSpec& spec) {
  const auto x = exact_ppr_vector(spec);
  const double k = static_cast<double>(spec.k);
  const double o = static_cast<double>(spec.other());
  return {x.seed_value / o, x.same_side_value / o, x.other_side_value / k};
}

inline Graph build_complete_bipartite(std::size_t n, std::size_t k) {
  if (k < 1 || k + 1 > n) throw std::invalid_argument("need 1 <= k <= n-1");
  std::vector<Edge> edges;
  edges.reserve(k * (n - k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = k; j < n; ++j) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return Graph::from_edges(n, edges, false);
}

inline std::vector<std::size_t> bipartite_degrees(const BipartiteSpec& spec) {
  std::vector<std::size_t> d(spec.n, spec.k);
  std::fill(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(spec.k), spec.other());
  return d;
}

namespace detail {

// A group of interchangeable entries, each adding `contribution` to the error
// functional (squared entries for 2-norms) when left out.
struct EntryBlock {
  double count = 0.0;
  double contribution = 0.0;
};

// Closed-form comparisons allow this relative slack so that thresholds landing
// exactly on eps are decided as in exact arithmetic.
inline constexpr double kBoundarySlack = 1e-12;

// Fewest entries to keep, taking whole blocks in decreasing contribution order,
// so that the dropped total is <= target.
inline double greedy_block_count(std::vector<EntryBlock> blocks, double target) {
  std::sort(blocks.begin(), blocks.end(),
            [](const EntryBlock& a, const EntryBlock& b) { return a.contribution > b.contribution; });
  const double limit = target * (1.0 + kBoundarySlack);
  std::vector<double> rest(blocks.size() + 1, 0.0);
  for (std::size_t b = blocks.size(); b-- > 0;) rest[b] = rest[b + 1] + blocks[b].count * blocks[b].contribution;
  if (rest[0] <= limit) return 0.0;
  double kept = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    if (rest[b + 1] > limit) {
      kept += blk.count;
      continue;
    }
    // smallest z with (count - z) c + rest[b+1] <= limit
    double drop = blk.contribution > 0.0 ? std::floor((limit - rest[b + 1]) / blk.contribution) : blk.count;
    drop = std::clamp(drop, 0.0, blk.count);
    while (drop > 0.0 && drop * blk.contribution + rest[b + 1] > limit) drop -= 1.0;
    while (drop < blk.count && (drop + 1.0) * blk.contribution + rest[b + 1] <= limit) drop += 1.0;
    return kept + blk.count - drop;
  }
  return kept;
}

inline double contribution(double value, double degree, Norm norm) {
  double v = is_degree_norm(norm) ? value / degree : value;
  return is_two_norm(norm) ? v * v : v;
}

}  // namespace detail

// Sparsest eps-accurate approximation of the seeded PageRank vector on K_{k,n-k}
// under `norm`, in O(1) arithmetic from the block values.
inline std::size_t bipartite_min_nnz(const BipartiteSpec& spec, double eps, Norm norm) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const auto x = exact_ppr_vector(spec);
  const double k = static_cast<double>(spec.k);
  const double o = static_cast<double>(spec.other());
  std::vector<detail::EntryBlock> blocks = {
      {1.0, detail::contribution(x.seed_value, o, norm)},
      {k - 1.0, detail::contribution(x.same_side_value, o, norm)},
      {o, detail::contribution(x.other_side_value, k, norm)},
  };
  const double target = is_two_norm(norm) ? eps * eps : eps;
  return static_cast<std::size_t>(detail::greedy_block_count(std::move(blocks), target));
}

// Count for the explicit construction x_hat = (1-alpha) e_j plus z1 opposite-side
// and z2 seed-side entries of x (the seed's c2/k share counted among the k
// seed-side entries). It overcounts the optimum by at most one.
inline std::size_t bipartite_constructive_nnz(const BipartiteSpec& spec, double eps, Norm norm) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const auto x = exact_ppr_vector(spec);
  const double k = static_cast<double>(spec.k);
  const double o = static_cast<double>(spec.other());
  std::vector<detail::EntryBlock> blocks = {
      {k, detail::contribution(x.same_side_value, o, norm)},
      {o, detail::contribution(x.other_side_value, k, norm)},
  };
  const double target = is_two_norm(norm) ? eps * eps : eps;
  return 1 + static_cast<std::size_t>(detail::greedy_block_count(std::move(blocks), target));
}

// Any eps-accurate 1-norm approximation needs at least (1 - eps(1+alpha)/alpha^2) n
// nonzeros, provided eps < alpha^2/(1+alpha).
inline double prop1_lower_bound(std::size_t n, double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(eps < alpha * alpha / (1.0 + alpha)))
    throw std::invalid_argument("lower bound hypothesis violated: need eps < alpha^2/(1+alpha)");
  return (1.0 - eps * (1.0 + alpha) / (alpha * alpha)) * static_cast<double>(n);
}

struct StarResidualDiagnostics {
  double residual_l1 = 0.0;
  double residual_l2 = 0.0;
  double residual_deg_l1 = 0.0;
  double residual_deg_l2 = 0.0;
  std::size_t solution_l1_min_nnz = 0;  // of the exact solution at the given eps
};

// Star on n nodes seeded at the center with the trivial approximation x_hat = 0:
// r = (1-alpha) e_center is sparse and looks tiny under D^-1 although x is
// spread almost uniformly.
inline StarResidualDiagnostics star_residual_diagnostics(std::size_t n, double alpha, double eps) {
  if (n < 2) throw std::invalid_argument("star needs n >= 2");
  StarResidualDiagnostics d;
  d.residual_l1 = d.residual_l2 = 1.0 - alpha;
  d.residual_deg_l1 = d.residual_deg_l2 = (1.0 - alpha) / static_cast<double>(n - 1);
  d.solution_l1_min_nnz = bipartite_min_nnz({n, 1, alpha}, eps, Norm::L1);
  return d;
}

// ---------------------------------------------------------------------------
// Growth classification over doubling n.

enum class Growth { Bounded, Linear, Unclear };

inline std::string_view to_string(Growth g) {
  switch (g) {
    case Growth::Bounded: return "bounded";
    case Growth::Linear: return "linear";
    case Growth::Unclear: return "unclear";
  }
  return "?";
}

// Average log2 growth of counts over the last three doublings of n.
inline double tail_growth_exponent(std::span<const std::size_t> counts) {
  if (counts.size() < 2) throw std::invalid_argument("need at least two sizes");
  const std::size_t steps = std::min<std::size_t>(3, counts.size() - 1);
  double s = 0.0;
  for (std::size_t i = counts.size() - steps; i < counts.size(); ++i) {
    const double a = std::max<double>(1.0, static_cast<double>(counts[i - 1]));
    const double b = std::max<double>(1.0, static_cast<double>(counts[i]));
    s += std::log2(b / a);
  }
  return s / static_cast<double>(steps);
}

inline Growth classify_growth(std::span<const std::size_t> counts) {
  const double e = tail_growth_exponent(counts);
  if (e <= 0.25) return Growth::Bounded;
  if (e >= 0.75) return Growth::Linear;
  return Growth::Unclear;
}

enum class BipartiteRegime { SparseSeedSmall, SparseSeedLarge, Dense };

inline std::string_view to_string(BipartiteRegime r) {
  switch (r) {
    case BipartiteRegime::SparseSeedSmall: return "sparse-seed-small";
    case BipartiteRegime::SparseSeedLarge: return "sparse-seed-large";
    case BipartiteRegime::Dense: return "dense";
  }
  return "?";
}

// Seed-side size for a regime: a constant small side, or n/2.
inline std::size_t regime_k(BipartiteRegime r, std::size_t n, std::size_t small_side) {
  switch (r) {
    case BipartiteRegime::SparseSeedSmall: return small_side;
    case BipartiteRegime::SparseSeedLarge: return n - small_side;
    case BipartiteRegime::Dense: return n / 2;
  }
  return 1;
}

struct RegimeSeries {
  BipartiteRegime regime;
  Norm norm;
  std::vector<std::size_t> ns;
  std::vector<std::size_t> counts;
  Growth growth = Growth::Unclear;
};

inline RegimeSeries regime_series(BipartiteRegime regime, Norm norm, std::span<const std::size_t> ns, double alpha,
                                  double eps, std::size_t small_side = 2) {
  RegimeSeries s{regime, norm, {ns.begin(), ns.end()}, {}, Growth::Unclear};
  for (std::size_t n : ns) s.counts.push_back(bipartite_min_nnz({n, regime_k(regime, n, small_side), alpha}, eps, norm));
  s.growth = classify_growth(s.counts);
  return s;
}

struct LocalApproxRow {
  bool dense = false;
  Norm norm = Norm::L1;
  std::vector<RegimeSeries> series;  // both seed placements for sparse graphs
  // Yes when every series stays bounded, No when every series grows linearly.
  std::optional<bool> local;
};

// Reproduces the sparse/dense x {L1, DegL1, L2, DegL2} local-approximability table.
inline std::vector<LocalApproxRow> local_approx_table(std::span<const std::size_t> ns, double alpha, double eps,
                                                      std::size_t small_side = 2) {
  std::vector<LocalApproxRow> rows;
  const std::array<Norm, 4> norms = {Norm::L1, Norm::DegL1, Norm::L2, Norm::DegL2};
  for (bool dense : {false, true}) {
    for (Norm norm : norms) {
      LocalApproxRow row;
      row.dense = dense;
      row.norm = norm;
      if (dense) {
        row.series.push_back(regime_series(BipartiteRegime::Dense, norm, ns, alpha, eps, small_side));
      } else {
        row.series.push_back(regime_series(BipartiteRegime::SparseSeedSmall, norm, ns, alpha, eps, small_side));
        row.series.push_back(regime_series(BipartiteRegime::SparseSeedLarge, norm, ns, alpha, eps, small_side));
      }
      const bool all_bounded = std::all_of(row.series.begin(), row.series.end(),
                                           [](const RegimeSeries& s) { return s.growth == Growth::Bounded; });
      const bool all_linear = std::all_of(row.series.begin(), row.series.end(),
                                          [](const RegimeSeries& s) { return s.growth == Growth::Linear; });
      if (all_bounded) row.local = true;
      if (all_linear) row.local = false;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace pprloc
