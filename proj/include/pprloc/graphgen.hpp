#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "pprloc/degseq.hpp"
#include "pprloc/graph.hpp"
#include "pprloc/rng.hpp"

namespace pprloc {

struct GenConfig {
  std::uint64_t seed = 1;
  int max_restarts = 20;
};

struct Generated {
  Graph graph;
  std::uint64_t seed_used = 0;
  int restarts = 0;  // failed attempts before the returned sample
  bool clipped = false;  // Chung-Lu: some pair probability exceeded 1
  bool fallback = false;  // exact-degree: produced by the graphicality-guided sampler
};

// Chung-Lu: each pair {i,j}, i != j, is an edge independently with probability
// min(1, w_i w_j / S), S = sum of weights. Node i of the result carries target
// weight target[i]. Runs in O(n + m) expected time by skipping geometrically
// over weight-sorted candidates.
inline Generated generate_chung_lu(std::span<const double> weights, std::uint64_t seed) {
  const std::size_t n = weights.size();
  Generated out;
  out.seed_used = seed;
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0.0; }))
    throw std::invalid_argument("Chung-Lu weights must be nonnegative");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return weights[a] > weights[b]; });
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = weights[order[i]];
  if (n >= 2 && total > 0.0 && w[0] * w[1] > total) out.clipped = true;

  Rng rng(seed);
  std::vector<Edge> edges;
  if (total > 0.0) {
    for (std::size_t u = 0; u + 1 < n; ++u) {
      std::size_t v = u + 1;
      double p = std::min(w[u] * w[v] / total, 1.0);
      while (v < n && p > 0.0) {
        if (p < 1.0) {
          const double r = rng.uniform_open_closed();
          const double skip = std::floor(std::log(r) / std::log1p(-p));
          v += skip >= static_cast<double>(n) ? n : static_cast<std::size_t>(skip);
        }
        if (v < n) {
          const double q = std::min(w[u] * w[v] / total, 1.0);
          if (rng.uniform() < q / p) edges.emplace_back(order[u], order[v]);
          p = q;
          ++v;
        }
      }
    }
  }
  out.graph = Graph::from_edges(n, edges, false);
  return out;
}

inline Generated generate_chung_lu(const DegreeSequence& target, std::uint64_t seed) {
  std::vector<double> w(target.degrees.begin(), target.degrees.end());
  return generate_chung_lu(w, seed);
}

namespace detail {

// Below this pair weight the BKS factor 1 - d_i d_j / 4m is floored, so pairs of
// two very large hubs stay reachable instead of being forbidden outright.
inline constexpr double kMinPairWeight = 1e-3;

inline std::uint64_t edge_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// One sequential-insertion attempt; returns false on a dead end.
inline bool bks_attempt(const std::vector<Degree>& target, std::uint64_t seed, std::vector<Edge>& edges) {
  const std::size_t n = target.size();
  const double four_m = 2.0 * static_cast<double>(std::accumulate(target.begin(), target.end(), Degree{0}));
  Rng rng(seed);
  edges.clear();
  std::vector<Degree> residual(target);

  // Stub array: node i appears residual[i] times; slot_of tracks stub positions
  // per node so a stub can be removed by swapping with the last.
  std::vector<NodeId> stubs;
  std::vector<std::vector<std::size_t>> slots(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Degree c = 0; c < target[i]; ++c) {
      slots[i].push_back(stubs.size());
      stubs.push_back(static_cast<NodeId>(i));
    }
  auto remove_stub = [&](NodeId v) {
    const std::size_t pos = slots[v].back();
    slots[v].pop_back();
    const std::size_t last = stubs.size() - 1;
    if (pos != last) {
      const NodeId moved = stubs[last];
      stubs[pos] = moved;
      auto& ms = slots[moved];
      *std::find(ms.begin(), ms.end(), last) = pos;
    }
    stubs.pop_back();
  };

  std::unordered_set<std::uint64_t> present;
  present.reserve(static_cast<std::size_t>(four_m));
  auto weight = [&](NodeId i, NodeId j) {
    const double f = 1.0 - static_cast<double>(target[i]) * static_cast<double>(target[j]) / four_m;
    return std::max(f, kMinPairWeight);
  };
  auto insert = [&](NodeId i, NodeId j) {
    present.insert(edge_key(i, j));
    edges.emplace_back(i, j);
    --residual[i];
    --residual[j];
    remove_stub(i);
    remove_stub(j);
  };

  constexpr std::size_t kRejectLimit = 64;
  constexpr std::size_t kExactBelow = 400;      // open nodes
  constexpr std::size_t kHardRejectLimit = 200000;
  std::vector<NodeId> open;
  std::vector<std::pair<std::uint64_t, double>> cand;
  while (!stubs.empty()) {
    bool placed = false;
    std::size_t rejects = 0;
    while (rejects < kRejectLimit || (rejects < kHardRejectLimit && stubs.size() > 2 * kExactBelow)) {
      const NodeId i = stubs[rng.below(stubs.size())];
      const NodeId j = stubs[rng.below(stubs.size())];
      if (i == j || present.count(edge_key(i, j)) || rng.uniform() >= weight(i, j)) {
        ++rejects;
        continue;
      }
      insert(i, j);
      placed = true;
      break;
    }
    if (placed) continue;

    // Exact draw over all legal pairs of unsaturated nodes.
    open.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (residual[v] > 0) open.push_back(static_cast<NodeId>(v));
    cand.clear();
    double total = 0.0;
    for (std::size_t a = 0; a < open.size(); ++a)
      for (std::size_t b = a + 1; b < open.size(); ++b) {
        const NodeId i = open[a], j = open[b];
        if (present.count(edge_key(i, j))) continue;
        const double wgt = static_cast<double>(residual[i]) * static_cast<double>(residual[j]) * weight(i, j);
        total += wgt;
        cand.emplace_back(edge_key(i, j), total);
      }
    if (cand.empty()) return false;
    const double r = rng.uniform() * total;
    auto it = std::upper_bound(cand.begin(), cand.end(), r,
                               [](double x, const auto& c) { return x < c.second; });
    if (it == cand.end()) --it;
    insert(static_cast<NodeId>(it->first >> 32), static_cast<NodeId>(it->first & 0xffffffffu));
  }
  return true;
}

// Graphicality-guided sequential sampler: saturate the node with the smallest
// residual degree one edge at a time, choosing partners proportional to residual
// degree among those that keep the residual sequence graphical. Never dead-ends
// on a graphical target; O(m n^2 log n), so only used as a last resort.
inline std::vector<Edge> guided_realization(const std::vector<Degree>& target, std::uint64_t seed) {
  const std::size_t n = target.size();
  Rng rng(seed);
  std::vector<Degree> r(target);
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  auto graphical = [&](const std::vector<Degree>& d) {
    DegreeSequence s{d, std::nullopt};
    std::sort(s.degrees.begin(), s.degrees.end(), std::greater<>{});
    return is_graphical_erdos_gallai(s);
  };
  std::vector<std::pair<NodeId, double>> cand;
  while (true) {
    std::size_t i = n;
    for (std::size_t v = 0; v < n; ++v)
      if (r[v] > 0 && (i == n || r[v] < r[i])) i = v;
    if (i == n) break;
    while (r[i] > 0) {
      cand.clear();
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || r[j] == 0 || present.count(edge_key(static_cast<NodeId>(i), static_cast<NodeId>(j)))) continue;
        --r[i];
        --r[j];
        const bool ok = graphical(r);
        ++r[i];
        ++r[j];
        if (!ok) continue;
        total += static_cast<double>(r[j]);
        cand.emplace_back(static_cast<NodeId>(j), total);
      }
      if (cand.empty()) throw std::logic_error("guided sampler stuck on a graphical sequence");
      const double x = rng.uniform() * total;
      auto it = std::upper_bound(cand.begin(), cand.end(), x, [](double v, const auto& c) { return v < c.second; });
      if (it == cand.end()) --it;
      const NodeId j = it->first;
      present.insert(edge_key(static_cast<NodeId>(i), j));
      edges.emplace_back(static_cast<NodeId>(i), j);
      --r[i];
      --r[j];
    }
  }
  return edges;
}

}  // namespace detail

// Sequential edge insertion realizing `target` exactly: unsaturated pairs are
// drawn with probability proportional to r_i r_j (1 - d_i d_j / 4m), where r is
// the residual degree. Dead ends restart with seed+1, seed+2, ...; when every
// attempt dead-ends, targets of up to kGuidedMaxNodes nodes are finished by the
// graphicality-guided sampler with seed seed+max_restarts.
inline constexpr std::size_t kGuidedMaxNodes = 2000;

inline Generated generate_exact_degree(const DegreeSequence& target, const GenConfig& config) {
  if (config.max_restarts < 1) throw std::invalid_argument("max_restarts must be at least 1");
  if (target.sum() % 2 != 0) throw std::invalid_argument("degree sum is odd; repair parity first");
  if (!is_graphical_erdos_gallai(target)) throw std::invalid_argument("degree sequence is not graphical");
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < config.max_restarts; ++attempt) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(attempt);
    if (detail::bks_attempt(target.degrees, seed, edges)) {
      Generated out;
      out.graph = Graph::from_edges(target.size(), edges, false);
      out.seed_used = seed;
      out.restarts = attempt;
      return out;
    }
  }
  if (target.size() > kGuidedMaxNodes)
    throw std::runtime_error("exact-degree generation hit a dead end on all " + std::to_string(config.max_restarts) +
                             " attempts (seeds " + std::to_string(config.seed) + ".." +
                             std::to_string(config.seed + static_cast<std::uint64_t>(config.max_restarts) - 1) + ")");
  Generated out;
  out.seed_used = config.seed + static_cast<std::uint64_t>(config.max_restarts);
  out.graph = Graph::from_edges(target.size(), detail::guided_realization(target.degrees, out.seed_used), false);
  out.restarts = config.max_restarts;
  out.fallback = true;
  return out;
}

}  // namespace pprloc
