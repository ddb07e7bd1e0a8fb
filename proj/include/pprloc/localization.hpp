#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pprloc/graph.hpp"
#include "pprloc/solver.hpp"

namespace pprloc {

enum class Norm { L1, L2, DegL1, DegL2 };

inline std::string_view to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "L1";
    case Norm::L2: return "L2";
    case Norm::DegL1: return "DegL1";
    case Norm::DegL2: return "DegL2";
  }
  return "?";
}

inline Norm parse_norm(std::string_view s) {
  if (s == "L1" || s == "l1") return Norm::L1;
  if (s == "L2" || s == "l2") return Norm::L2;
  if (s == "DegL1" || s == "degl1") return Norm::DegL1;
  if (s == "DegL2" || s == "degl2") return Norm::DegL2;
  throw std::invalid_argument("unknown norm '" + std::string(s) + "' (expected L1, L2, DegL1, DegL2)");
}

inline bool is_degree_norm(Norm norm) { return norm == Norm::DegL1 || norm == Norm::DegL2; }
inline bool is_two_norm(Norm norm) { return norm == Norm::L2 || norm == Norm::DegL2; }

// Per-entry error contribution when an entry is dropped: |x_i| or x_i/deg_i,
// squared for the 2-norms. The error of dropping a set S is then
// sum_{i in S} c_i (1-norms) or sqrt(sum_{i in S} c_i) (2-norms).
inline std::vector<double> error_contributions(std::span<const double> x, Norm norm,
                                               std::span<const std::size_t> degrees = {}) {
  if (is_degree_norm(norm) && degrees.size() != x.size())
    throw std::invalid_argument("degree-normalized norm needs one degree per entry");
  std::vector<double> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = std::abs(x[i]);
    if (is_degree_norm(norm)) {
      if (degrees[i] == 0) throw std::invalid_argument("degree-normalized norm on a degree-0 entry");
      v /= static_cast<double>(degrees[i]);
    }
    c[i] = is_two_norm(norm) ? v * v : v;
  }
  return c;
}

// Sorted contributions and their tail sums; tail[k] is the error-functional
// value (before any square root) after keeping the k largest contributions.
//
// Tails are compared with a relative slack of 1e-12 so that accuracies landing
// exactly on a tail sum (uniform vectors) are decided as in exact arithmetic.
inline constexpr double kTailSlack = 1e-12;

struct TailProfile {
  std::vector<double> tail;
  bool two_norm = false;

  std::size_t min_nnz(double eps) const {
    if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
    const double target = (two_norm ? eps * eps : eps) * (1.0 + kTailSlack);
    // tail is nonincreasing
    auto it = std::partition_point(tail.begin(), tail.end(), [&](double t) { return t > target; });
    return static_cast<std::size_t>(it - tail.begin());
  }
};

inline TailProfile tail_profile(std::span<const double> x, Norm norm, std::span<const std::size_t> degrees = {}) {
  auto c = error_contributions(x, norm, degrees);
  std::sort(c.begin(), c.end(), std::greater<>{});
  TailProfile p;
  p.two_norm = is_two_norm(norm);
  p.tail.assign(c.size() + 1, 0.0);
  // accumulate from the small end
  for (std::size_t k = c.size(); k-- > 0;) p.tail[k] = p.tail[k + 1] + c[k];
  return p;
}

// Fewest entries of x that must be kept for an approximation with error <= eps
// under `norm`. Keeping the largest contributions first is optimal because
// every supported norm is a monotone function of a sum of per-entry terms.
inline std::size_t min_nnz_for_accuracy(std::span<const double> x, double eps, Norm norm,
                                        std::span<const std::size_t> degrees = {}) {
  if (eps < 0.0) throw std::invalid_argument("eps must be nonnegative");
  for (double v : x)
    if (v < 0.0) throw std::invalid_argument("vector must be entrywise nonnegative");
  return tail_profile(x, norm, degrees).min_nnz(eps);
}

// Powers of ten from 1e-1 down to 1e-8.
inline std::vector<double> default_eps_grid() {
  std::vector<double> g;
  for (int e = 1; e <= 8; ++e) g.push_back(std::pow(10.0, -e));
  return g;
}

struct LocalizationCurve {
  std::vector<double> eps_grid;
  std::vector<std::size_t> min_nnz;
  Norm norm = Norm::L1;
  std::size_t n = 0;
  double alpha = 0.0;
  NodeId seed = 0;
  std::string graph_id;
};

inline LocalizationCurve curve_from_vector(std::span<const double> x, std::span<const double> eps_grid, Norm norm,
                                           std::span<const std::size_t> degrees = {}) {
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0)) throw std::invalid_argument("eps grid must be positive");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) throw std::invalid_argument("eps grid must be decreasing");
  }
  for (double v : x)
    if (v < 0.0) throw std::invalid_argument("vector must be entrywise nonnegative");
  const auto prof = tail_profile(x, norm, degrees);
  LocalizationCurve c;
  c.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  c.norm = norm;
  c.n = x.size();
  for (double e : eps_grid) c.min_nnz.push_back(prof.min_nnz(e));
  return c;
}

// Reference tolerance two orders below the finest grid point, capped at 1e-12.
inline double reference_tolerance(std::span<const double> eps_grid) {
  double tol = 1e-12;
  for (double e : eps_grid) tol = std::min(tol, e / 100.0);
  return tol;
}

inline LocalizationCurve localization_curve(const PprProblem& prob, std::span<const double> eps_grid, Norm norm) {
  if (eps_grid.empty()) throw std::invalid_argument("eps grid is empty");
  const auto x = power_method_reference(prob, reference_tolerance(eps_grid));
  std::vector<std::size_t> deg;
  if (is_degree_norm(norm)) deg = prob.graph.degrees();
  auto c = curve_from_vector(x, eps_grid, norm, deg);
  c.alpha = prob.alpha;
  c.seed = prob.seed;
  return c;
}

// Header `inv_eps,min_nnz`.
inline void write_curve_csv(const LocalizationCurve& c, std::ostream& out) {
  out << "inv_eps,min_nnz\n";
  for (std::size_t i = 0; i < c.eps_grid.size(); ++i) {
    std::ostringstream v;
    v << std::setprecision(17) << 1.0 / c.eps_grid[i];
    out << v.str() << ',' << c.min_nnz[i] << '\n';
  }
}

struct CurveComparison {
  std::vector<double> eps_grid;
  std::vector<std::vector<std::size_t>> columns;  // one per curve
  std::vector<double> max_rel_dev;               // per row: (max - min) / max, 0 if max == 0
};

inline CurveComparison compare_curves(std::span<const LocalizationCurve> curves) {
  if (curves.empty()) throw std::invalid_argument("no curves to compare");
  CurveComparison cmp;
  cmp.eps_grid = curves.front().eps_grid;
  for (const auto& c : curves) {
    if (c.eps_grid != cmp.eps_grid) throw std::invalid_argument("curves use different eps grids");
    cmp.columns.push_back(c.min_nnz);
  }
  for (std::size_t row = 0; row < cmp.eps_grid.size(); ++row) {
    std::size_t lo = cmp.columns[0][row], hi = lo;
    for (const auto& col : cmp.columns) {
      lo = std::min(lo, col[row]);
      hi = std::max(hi, col[row]);
    }
    cmp.max_rel_dev.push_back(hi == 0 ? 0.0 : static_cast<double>(hi - lo) / static_cast<double>(hi));
  }
  return cmp;
}

inline void write_comparison_csv(const CurveComparison& cmp, std::span<const std::string> labels,
                                 std::span<const std::string> provenance, std::ostream& out) {
  for (const auto& line : provenance) out << "# " << line << '\n';
  out << "inv_eps";
  for (std::size_t i = 0; i < cmp.columns.size(); ++i)
    out << ',' << (i < labels.size() ? labels[i] : "curve" + std::to_string(i));
  out << ",max_rel_dev\n";
  for (std::size_t row = 0; row < cmp.eps_grid.size(); ++row) {
    std::ostringstream v;
    v << std::setprecision(17) << 1.0 / cmp.eps_grid[row];
    out << v.str();
    for (const auto& col : cmp.columns) out << ',' << col[row];
    out << ',' << std::setprecision(6) << cmp.max_rel_dev[row] << '\n';
  }
}

}  // namespace pprloc
