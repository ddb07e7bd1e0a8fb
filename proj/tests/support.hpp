#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pprloc/graph.hpp"
#include "pprloc/rng.hpp"

namespace pprloc::testing {

inline Graph undirected(std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges, false); }

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return undirected(n, e);
}

inline Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(0, i);
  return undirected(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return undirected(n, e);
}

// Erdos-Renyi G(n, q) plus a spanning path so that every node has an edge.
inline Graph random_connected(std::size_t n, double q, Rng& rng) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < q) e.emplace_back(i, j);
  return undirected(n, e);
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

inline double max_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace pprloc::testing
