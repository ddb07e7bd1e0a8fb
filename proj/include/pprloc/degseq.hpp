#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pprloc/rng.hpp"

namespace pprloc {

using Degree = std::int64_t;

// Parameters of a (d, delta, p) rank-skewed sequence: the k-th largest degree
// is at most max{d k^-p, delta}.
struct SkewParams {
  Degree d = 1;
  Degree delta = 1;
  double p = 1.0;
};

struct DegreeSequence {
  std::vector<Degree> degrees;  // nonincreasing, all >= 1
  std::optional<SkewParams> meta;

  std::size_t size() const { return degrees.size(); }
  Degree sum() const { return std::accumulate(degrees.begin(), degrees.end(), Degree{0}); }
  Degree max() const { return degrees.empty() ? 0 : degrees.front(); }
  Degree min() const { return degrees.empty() ? 0 : degrees.back(); }

  bool is_valid() const {
    if (std::any_of(degrees.begin(), degrees.end(), [](Degree x) { return x < 1; })) return false;
    return std::is_sorted(degrees.begin(), degrees.end(), std::greater<>{});
  }

  friend bool operator==(const DegreeSequence& a, const DegreeSequence& b) { return a.degrees == b.degrees; }
};

inline DegreeSequence make_sequence(std::vector<Degree> degrees) {
  std::sort(degrees.begin(), degrees.end(), std::greater<>{});
  DegreeSequence s{std::move(degrees), std::nullopt};
  if (!s.is_valid()) throw std::invalid_argument("degree sequence entries must be positive");
  return s;
}

// d(k) = max{ floor(d k^-p), delta } for k = 1..n.
inline DegreeSequence generate_rank_skewed(std::size_t n, Degree d, Degree delta, double p) {
  if (n < 2) throw std::invalid_argument("rank-skewed sequence needs n >= 2");
  if (d > static_cast<Degree>(n) - 1)
    throw std::invalid_argument("max degree d = " + std::to_string(d) + " exceeds n-1 = " + std::to_string(n - 1));
  if (delta < 1 || delta > d) throw std::invalid_argument("need 1 <= delta <= d");
  if (!(p > 0.0)) throw std::invalid_argument("decay exponent p must be positive");
  DegreeSequence s;
  s.degrees.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = static_cast<double>(d) * std::pow(static_cast<double>(k), -p);
    // pow can land a hair below an exact integer (9 * 9^-0.5); snap it.
    const auto f = static_cast<Degree>(std::floor(v * (1.0 + 1e-12)));
    s.degrees[k - 1] = std::max(f, delta);
  }
  s.meta = SkewParams{d, delta, p};
  return s;
}

// True when every entry satisfies degree(k) <= max{d k^-p, delta}.
inline bool satisfies_rank_skew(const DegreeSequence& s, const SkewParams& params) {
  for (std::size_t k = 1; k <= s.size(); ++k) {
    const double cap = std::max(static_cast<double>(params.d) * std::pow(static_cast<double>(k), -params.p),
                                static_cast<double>(params.delta));
    if (static_cast<double>(s.degrees[k - 1]) > cap * (1.0 + 1e-12)) return false;
  }
  return true;
}

// Smallest integer d such that the sequence is (d, delta, p)-rank-skewed.
inline Degree certify_max_degree(const DegreeSequence& s, Degree delta, double p) {
  double need = static_cast<double>(s.max());
  for (std::size_t k = 1; k <= s.size(); ++k) {
    if (s.degrees[k - 1] <= delta) break;
    need = std::max(need, static_cast<double>(s.degrees[k - 1]) * std::pow(static_cast<double>(k), p));
  }
  auto d = static_cast<Degree>(std::ceil(need * (1.0 - 1e-12)));
  while (!satisfies_rank_skew(s, {d, delta, p})) ++d;
  return d;
}

// Erdos-Gallai: even sum and, for every prefix length r,
//   sum_{i<r} d_i <= r(r-1) + sum_{i>=r} min(d_i, r).
inline bool is_graphical_erdos_gallai(const DegreeSequence& s) {
  const auto& d = s.degrees;
  const std::size_t n = d.size();
  if (n == 0) return true;
  if (!std::is_sorted(d.begin(), d.end(), std::greater<>{})) throw std::invalid_argument("sequence must be nonincreasing");
  if (d.back() < 0) return false;
  if (s.sum() % 2 != 0) return false;
  std::vector<Degree> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];
  Degree lhs = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    lhs += d[r - 1];
    const auto rr = static_cast<Degree>(r);
    // first index whose degree is below r
    const std::size_t pos = static_cast<std::size_t>(
        std::partition_point(d.begin(), d.end(), [rr](Degree x) { return x >= rr; }) - d.begin());
    Degree rhs = rr * (rr - 1);
    if (pos <= r) {
      rhs += suffix[r];
    } else {
      rhs += static_cast<Degree>(pos - r) * rr + suffix[pos];
    }
    if (lhs > rhs) return false;
  }
  return true;
}

// Havel-Hakimi reduction on degree buckets: remove the largest entry d1 and
// decrement the next d1 largest, repeat.
inline bool is_graphical_havel_hakimi(const DegreeSequence& s) {
  const auto& d = s.degrees;
  if (d.empty()) return true;
  if (!std::is_sorted(d.begin(), d.end(), std::greater<>{})) throw std::invalid_argument("sequence must be nonincreasing");
  if (d.back() < 0) return false;
  if (s.sum() % 2 != 0) return false;
  const auto n = static_cast<Degree>(d.size());
  if (d.front() >= n) return false;
  std::vector<Degree> count(static_cast<std::size_t>(d.front()) + 1, 0);
  for (Degree x : d) ++count[static_cast<std::size_t>(x)];
  Degree top = d.front();
  Degree remaining = n;
  std::vector<std::pair<Degree, Degree>> moves;  // (bucket, how many move down one)
  while (remaining > 0) {
    while (top > 0 && count[static_cast<std::size_t>(top)] == 0) --top;
    if (top == 0) return true;
    const Degree d1 = top;
    --count[static_cast<std::size_t>(d1)];
    --remaining;
    if (d1 > remaining) return false;
    Degree need = d1;
    moves.clear();
    for (Degree b = top; b >= 1 && need > 0; --b) {
      const Degree take = std::min(need, count[static_cast<std::size_t>(b)]);
      if (take > 0) moves.emplace_back(b, take);
      need -= take;
    }
    if (need > 0) return false;  // would need to decrement a zero entry
    for (auto [b, take] : moves) {
      count[static_cast<std::size_t>(b)] -= take;
      count[static_cast<std::size_t>(b - 1)] += take;
    }
    // zero-degree entries are finished
    remaining -= count[0];
    count[0] = 0;
  }
  return true;
}

// Makes the degree sum even by bumping the last entry equal to the declared
// delta (or the global minimum when no entry equals delta), then re-sorting.
inline DegreeSequence repair_parity(DegreeSequence s) {
  if (s.degrees.empty() || s.sum() % 2 == 0) return s;
  std::size_t idx = s.degrees.size() - 1;  // last minimal entry
  if (s.meta) {
    auto it = std::find(s.degrees.rbegin(), s.degrees.rend(), s.meta->delta);
    if (it != s.degrees.rend()) idx = static_cast<std::size_t>(s.degrees.rend() - it) - 1;
  }
  ++s.degrees[idx];
  std::stable_sort(s.degrees.begin(), s.degrees.end(), std::greater<>{});
  return s;
}

// ---------------------------------------------------------------------------
// Fitting

struct FitOptions {
  std::size_t sample_count = 500;
  std::size_t ransac_iters = 1000;
  double inlier_tol = 0.1;  // natural-log degree units
};

struct FitResult {
  double p = 0.0;
  double log_d = 0.0;
  double inlier_fraction = 0.0;
  std::size_t samples_used = 0;
};

// Ranks equally spaced on a log scale between 1 and n, deduplicated.
inline std::vector<std::size_t> geometric_ranks(std::size_t n, std::size_t count) {
  std::vector<std::size_t> ranks;
  if (n == 0 || count == 0) return ranks;
  if (count == 1) return {1};
  const double logn = std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < count; ++i) {
    const double x = logn * static_cast<double>(i) / static_cast<double>(count - 1);
    auto k = static_cast<std::size_t>(std::llround(std::exp(x)));
    ranks.push_back(std::clamp<std::size_t>(k, 1, n));
  }
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  return ranks;
}

namespace detail {

struct Line {
  double intercept = 0.0;
  double slope = 0.0;
};

inline Line least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {my - slope * mx, slope};
}

}  // namespace detail

// Fits log d(k) = log_d - p log k by RANSAC over geometrically spaced ranks.
// `values` is the rank-ordered (nonincreasing) degree profile.
inline FitResult fit_rank_skew(std::span<const double> values, Rng& rng, const FitOptions& opt = {}) {
  if (values.size() < 2) throw std::invalid_argument("fit needs at least two degrees");
  if (std::any_of(values.begin(), values.end(), [](double v) { return !(v > 0.0); }))
    throw std::invalid_argument("fit needs positive degrees");
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
    throw std::invalid_argument("degenerate sequence, slope undefined");

  const auto ranks = geometric_ranks(values.size(), opt.sample_count);
  std::vector<double> xs, ys;
  for (std::size_t k : ranks) {
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(values[k - 1]));
  }
  const std::size_t m = xs.size();
  if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); }))
    throw std::invalid_argument("degenerate sequence, slope undefined");

  auto count_inliers = [&](const detail::Line& line) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(ys[i] - (line.intercept + line.slope * xs[i])) < opt.inlier_tol) ++c;
    return c;
  };

  detail::Line best = detail::least_squares(xs, ys);
  std::size_t best_count = count_inliers(best);
  for (std::size_t it = 0; it < opt.ransac_iters && m >= 2; ++it) {
    const std::size_t a = rng.below(m);
    std::size_t b = rng.below(m - 1);
    if (b >= a) ++b;
    if (xs[a] == xs[b]) continue;
    const double slope = (ys[b] - ys[a]) / (xs[b] - xs[a]);
    const detail::Line line{ys[a] - slope * xs[a], slope};
    const std::size_t c = count_inliers(line);
    if (c > best_count) {
      best = line;
      best_count = c;
    }
  }

  std::vector<double> ix, iy;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(ys[i] - (best.intercept + best.slope * xs[i])) < opt.inlier_tol) {
      ix.push_back(xs[i]);
      iy.push_back(ys[i]);
    }
  }
  detail::Line refit = best;
  if (ix.size() >= 2 && std::any_of(ix.begin(), ix.end(), [&](double x) { return x != ix.front(); }))
    refit = detail::least_squares(ix, iy);

  FitResult r;
  r.p = -refit.slope;
  r.log_d = refit.intercept;
  r.samples_used = m;
  r.inlier_fraction = static_cast<double>(count_inliers(refit)) / static_cast<double>(m);
  if (!(r.p > 0.0)) throw std::runtime_error("fitted slope is not decaying (p <= 0)");
  return r;
}

inline FitResult fit_rank_skew(const DegreeSequence& s, Rng& rng, const FitOptions& opt = {}) {
  std::vector<double> values(s.degrees.begin(), s.degrees.end());
  return fit_rank_skew(values, rng, opt);
}

// ---------------------------------------------------------------------------
// Localization-bound analytics for a fitted sequence.

struct SkewAnalytics {
  double log_n_d = 0.0;
  double log_n_cp = 0.0;  // log_n(d)/p, exponent of the dominant d^{1/p} term of C_p
  bool sublinear = false;
};

inline SkewAnalytics skew_analytics_from_exponent(double log_n_d, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  SkewAnalytics a;
  a.log_n_d = log_n_d;
  a.log_n_cp = log_n_d / p;
  a.sublinear = a.log_n_cp < 1.0;
  return a;
}

inline SkewAnalytics skew_analytics(double n, double d, double p) {
  if (!(n > 1.0) || !(d >= 1.0)) throw std::invalid_argument("need n > 1 and d >= 1");
  return skew_analytics_from_exponent(std::log(d) / std::log(n), p);
}

inline SkewAnalytics table1_analytics(double n, double d, double p) { return skew_analytics(n, d, p); }

// ---------------------------------------------------------------------------
// One integer per line.

inline void write_sequence(const DegreeSequence& s, std::ostream& out) {
  for (Degree x : s.degrees) out << x << '\n';
}

inline DegreeSequence read_sequence(std::istream& in) {
  std::vector<Degree> d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(line.substr(b), &used);
    } catch (const std::exception&) {
      throw std::runtime_error("malformed degree at line " + std::to_string(lineno));
    }
    if (line.find_first_not_of(" \t\r,", b + used) != std::string::npos)
      throw std::runtime_error("malformed degree at line " + std::to_string(lineno));
    d.push_back(v);
  }
  return make_sequence(std::move(d));
}

}  // namespace pprloc
