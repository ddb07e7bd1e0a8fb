#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pprloc/sparse_vector.hpp"

namespace pprloc {

using Edge = std::pair<NodeId, NodeId>;

struct CleanStats {
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t isolated_removed = 0;
};

// Immutable compressed-row graph. Neighbor lists are sorted; undirected graphs
// store each edge in both directions. The random-walk operator P = A D^-1 is
// implied: column i spreads mass uniformly over adj(i).
//
// Ingested graphs never contain isolated nodes. Generators may produce them
// (Chung-Lu), which is why degree zero is representable; walk-based kernels
// reject mass placed on such nodes.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Builds a simple graph on nodes 0..n-1. Self-loops and duplicate edges are
  // dropped and counted. For undirected graphs {u,v} and {v,u} are the same.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges, bool directed,
                          CleanStats* stats = nullptr) {
    std::vector<Edge> arcs;
    arcs.reserve(directed ? edges.size() : 2 * edges.size());
    std::uint64_t loops = 0;
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) {
        ++loops;
        continue;
      }
      if (directed) {
        arcs.emplace_back(u, v);
      } else {
        arcs.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
    std::sort(arcs.begin(), arcs.end());
    const std::size_t before = arcs.size();
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    if (stats) {
      stats->self_loops_dropped += loops;
      stats->duplicates_dropped += before - arcs.size();
    }
    if (!directed) {
      const std::size_t m = arcs.size();
      for (std::size_t e = 0; e < m; ++e) arcs.emplace_back(arcs[e].second, arcs[e].first);
      std::sort(arcs.begin(), arcs.end());
    }

    Graph g;
    g.directed_ = directed;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(arcs.size());
    for (std::size_t e = 0; e < arcs.size(); ++e) g.adj_[e] = arcs[e].second;
    g.original_ids_.resize(n);
    std::iota(g.original_ids_.begin(), g.original_ids_.end(), std::uint64_t{0});
    return g;
  }

  // Builds directly from compressed rows; lists must already be sorted and simple.
  static Graph from_csr(std::vector<std::uint64_t> offsets, std::vector<NodeId> adj, bool directed,
                        std::vector<std::uint64_t> original_ids = {}) {
    if (offsets.empty() || offsets.back() != adj.size())
      throw std::invalid_argument("inconsistent compressed rows");
    Graph g;
    g.directed_ = directed;
    g.offsets_ = std::move(offsets);
    g.adj_ = std::move(adj);
    const std::size_t n = g.offsets_.size() - 1;
    for (NodeId a : g.adj_)
      if (a >= n) throw std::invalid_argument("neighbor out of range");
    if (original_ids.empty()) {
      g.original_ids_.resize(n);
      std::iota(g.original_ids_.begin(), g.original_ids_.end(), std::uint64_t{0});
    } else {
      if (original_ids.size() != n) throw std::invalid_argument("original id map size mismatch");
      g.original_ids_ = std::move(original_ids);
    }
    return g;
  }

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  // Number of stored adjacency entries (twice the edge count when undirected).
  std::size_t adjacency_size() const { return adj_.size(); }
  std::size_t num_edges() const { return directed_ ? adj_.size() : adj_.size() / 2; }
  bool directed() const { return directed_; }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(num_nodes());
    for (std::size_t v = 0; v < d.size(); ++v) d[v] = degree(static_cast<NodeId>(v));
    return d;
  }

  std::size_t min_degree() const {
    std::size_t m = num_nodes() ? degree(0) : 0;
    for (std::size_t v = 1; v < num_nodes(); ++v) m = std::min(m, degree(static_cast<NodeId>(v)));
    return m;
  }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (std::size_t v = 0; v < num_nodes(); ++v) m = std::max(m, degree(static_cast<NodeId>(v)));
    return m;
  }

  // Node of maximum degree; ties go to the smallest id.
  NodeId max_degree_node() const {
    NodeId best = 0;
    for (std::size_t v = 1; v < num_nodes(); ++v)
      if (degree(static_cast<NodeId>(v)) > degree(best)) best = static_cast<NodeId>(v);
    return best;
  }

  bool is_symmetric() const {
    for (std::size_t u = 0; u < num_nodes(); ++u)
      for (NodeId v : neighbors(static_cast<NodeId>(u)))
        if (!has_edge(v, static_cast<NodeId>(u))) return false;
    return true;
  }

  // No self-loops, strictly increasing neighbor lists.
  bool is_simple() const {
    for (std::size_t u = 0; u < num_nodes(); ++u) {
      auto nb = neighbors(static_cast<NodeId>(u));
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] == u) return false;
        if (i > 0 && nb[i - 1] >= nb[i]) return false;
      }
    }
    return true;
  }

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> adjacency() const { return adj_; }

  // Identifier each node had in the source this graph was derived from.
  std::uint64_t original_id(NodeId v) const { return original_ids_[v]; }
  std::span<const std::uint64_t> original_ids() const { return original_ids_; }

  // Undirected edge list with u < v, in row order.
  std::vector<Edge> edge_list() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (std::size_t u = 0; u < num_nodes(); ++u)
      for (NodeId v : neighbors(static_cast<NodeId>(u)))
        if (directed_ || u < v) out.emplace_back(static_cast<NodeId>(u), v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
  }

 private:
  bool directed_ = false;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> adj_;
  std::vector<std::uint64_t> original_ids_;
};

// ---------------------------------------------------------------------------
// Ingestion

struct LoadResult {
  Graph graph;
  CleanStats stats;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_u64(std::string_view& s, std::uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr == s.data()) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return s.empty() || s.front() == ' ' || s.front() == '\t' || s.front() == '\r';
}

}  // namespace detail

// Reads a SNAP-style edge list ("u v" per line, '#' comments). Node ids are
// remapped densely to 0..n-1 in increasing order of original id; the original
// ids are kept on the graph. Self-loops and duplicates are dropped and nodes
// left without edges are removed.
inline LoadResult read_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::uint64_t u = 0, v = 0;
    if (!detail::parse_u64(s, u) || !detail::parse_u64(s, v) || !detail::trim(s).empty())
      throw std::runtime_error("malformed edge at line " + std::to_string(lineno) + ": '" + line +
                               "'");
    raw.emplace_back(u, v);
  }

  LoadResult result;
  std::vector<std::uint64_t> ids;
  ids.reserve(2 * raw.size());
  for (auto [u, v] : raw) {
    if (u == v) continue;
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  // Nodes that appear only in self-loops end up isolated.
  std::vector<std::uint64_t> all;
  all.reserve(2 * raw.size());
  for (auto [u, v] : raw) {
    all.push_back(u);
    all.push_back(v);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  result.stats.isolated_removed = all.size() - ids.size();

  if (ids.size() > std::numeric_limits<NodeId>::max())
    throw std::runtime_error("graph too large for 32-bit node ids");
  auto dense = [&](std::uint64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    if (u == v) {
      ++result.stats.self_loops_dropped;
      continue;
    }
    edges.emplace_back(dense(u), dense(v));
  }
  Graph g = Graph::from_edges(ids.size(), edges, directed, &result.stats);
  if (directed) {
    for (std::size_t v = 0; v < g.num_nodes(); ++v)
      if (g.degree(static_cast<NodeId>(v)) == 0)
        throw std::runtime_error("node " + std::to_string(ids[v]) +
                                 " has no out-links; dangling nodes are not supported");
  }
  result.graph = Graph::from_csr(std::vector<std::uint64_t>(g.offsets().begin(), g.offsets().end()),
                                 std::vector<NodeId>(g.adjacency().begin(), g.adjacency().end()),
                                 directed, std::move(ids));
  return result;
}

inline LoadResult load_edge_list(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return read_edge_list(in, directed);
}

// Writes "u v" lines (u < v for undirected graphs) using dense ids.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

// ---------------------------------------------------------------------------
// Binary cache: "PPRG1", u64 n, u64 m, n x u64 degree, m x u64 neighbor, all
// little-endian; m is the number of adjacency entries. Undirected graphs only.

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t x) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("truncated graph cache");
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | buf[i];
  return x;
}

}  // namespace detail

inline constexpr std::string_view kBinaryMagic = "PPRG1";

inline void write_binary(const Graph& g, std::ostream& out) {
  if (g.directed()) throw std::invalid_argument("binary cache stores undirected graphs only");
  out.write(kBinaryMagic.data(), static_cast<std::streamsize>(kBinaryMagic.size()));
  detail::put_u64(out, g.num_nodes());
  detail::put_u64(out, g.adjacency_size());
  for (std::size_t v = 0; v < g.num_nodes(); ++v) detail::put_u64(out, g.degree(static_cast<NodeId>(v)));
  for (NodeId a : g.adjacency()) detail::put_u64(out, a);
}

inline Graph read_binary(std::istream& in) {
  char magic[5];
  if (!in.read(magic, 5) || std::string_view(magic, 5) != kBinaryMagic)
    throw std::runtime_error("not a PPRG1 graph cache");
  const std::uint64_t n = detail::get_u64(in);
  const std::uint64_t m = detail::get_u64(in);
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (std::uint64_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + detail::get_u64(in);
  if (offsets[n] != m) throw std::runtime_error("graph cache degree sum does not match m");
  std::vector<NodeId> adj(m);
  for (auto& a : adj) a = static_cast<NodeId>(detail::get_u64(in));
  Graph g = Graph::from_csr(std::move(offsets), std::move(adj), false);
  if (!g.is_simple() || !g.is_symmetric()) throw std::runtime_error("graph cache is not a simple undirected graph");
  return g;
}

// Loads either a binary cache (detected by magic) or an undirected edge list.
inline LoadResult load_graph(const std::string& path) {
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open graph '" + path + "'");
    char magic[5] = {};
    probe.read(magic, 5);
    if (probe.gcount() == 5 && std::string_view(magic, 5) == kBinaryMagic) {
      probe.seekg(0);
      return LoadResult{read_binary(probe), {}};
    }
  }
  return load_edge_list(path, false);
}

// ---------------------------------------------------------------------------
// Structure

struct ComponentResult {
  Graph graph;
  double fraction = 1.0;
  std::vector<NodeId> kept;  // ids in the input graph, increasing
};

// Subgraph induced by `nodes` (must be increasing), renumbered densely.
inline Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> remap(g.num_nodes(), std::numeric_limits<NodeId>::max());
  for (std::size_t i = 0; i < nodes.size(); ++i) remap[nodes[i]] = static_cast<NodeId>(i);
  std::vector<std::uint64_t> offsets(nodes.size() + 1, 0);
  std::vector<NodeId> adj;
  std::vector<std::uint64_t> orig(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId w : g.neighbors(nodes[i]))
      if (remap[w] != std::numeric_limits<NodeId>::max()) adj.push_back(remap[w]);
    offsets[i + 1] = adj.size();
    orig[i] = g.original_id(nodes[i]);
  }
  return Graph::from_csr(std::move(offsets), std::move(adj), g.directed(), std::move(orig));
}

// Connected components of an undirected graph; returns per-node labels.
inline std::vector<std::uint32_t> component_labels(const Graph& g, std::uint32_t* count = nullptr) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.num_nodes(), unset);
  std::uint32_t next = 0;
  std::vector<NodeId> stack;
  for (std::size_t s = 0; s < g.num_nodes(); ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u))
        if (label[v] == unset) {
          label[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

// Largest connected component; ties go to the component holding the smallest
// original node id.
inline ComponentResult largest_connected_component(const Graph& g) {
  if (g.directed()) throw std::invalid_argument("largest_connected_component expects an undirected graph");
  ComponentResult res;
  if (g.num_nodes() == 0) return res;
  std::uint32_t count = 0;
  auto label = component_labels(g, &count);
  std::vector<std::size_t> size(count, 0);
  std::vector<std::uint64_t> min_orig(count, std::numeric_limits<std::uint64_t>::max());
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    ++size[label[v]];
    min_orig[label[v]] = std::min(min_orig[label[v]], g.original_id(static_cast<NodeId>(v)));
  }
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < count; ++c)
    if (size[c] > size[best] || (size[c] == size[best] && min_orig[c] < min_orig[best])) best = c;
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    if (label[v] == best) res.kept.push_back(static_cast<NodeId>(v));
  res.fraction = static_cast<double>(res.kept.size()) / static_cast<double>(g.num_nodes());
  res.graph = res.kept.size() == g.num_nodes() ? g : induced_subgraph(g, res.kept);
  return res;
}

// ---------------------------------------------------------------------------
// Random-walk operator

// w = P v with P_{j,i} = 1/degree(i).
inline SparseVector apply_walk(const Graph& g, const SparseVector& v) {
  SparseVector w;
  for (const auto& [i, val] : v) {
    if (i >= g.num_nodes()) throw std::out_of_range("vector index is not a node");
    if (val == 0.0) continue;
    const std::size_t d = g.degree(i);
    if (d == 0) throw std::invalid_argument("walk mass on a node of degree 0");
    const double share = val / static_cast<double>(d);
    for (NodeId j : g.neighbors(i)) w.add(j, share);
  }
  w.canonicalize();
  return w;
}

// Dense form: out = P in. Mass on degree-0 nodes is rejected.
inline void apply_walk_dense(const Graph& g, std::span<const double> in, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const double val = in[i];
    if (val == 0.0) continue;
    const std::size_t d = g.degree(static_cast<NodeId>(i));
    if (d == 0) throw std::invalid_argument("walk mass on a node of degree 0");
    const double share = val / static_cast<double>(d);
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) out[j] += share;
  }
}

// ---------------------------------------------------------------------------
// Clustering

struct TriangleStats {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  double coefficient = 0.0;
};

// Triangles via sorted-neighbor intersection over node-ordered wedges u < v < w.
inline std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t t = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    auto nu = g.neighbors(static_cast<NodeId>(u));
    auto first_above_u = std::upper_bound(nu.begin(), nu.end(), static_cast<NodeId>(u));
    for (auto vit = first_above_u; vit != nu.end(); ++vit) {
      const NodeId v = *vit;
      auto nv = g.neighbors(v);
      auto a = vit + 1;
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++t;
          ++a;
          ++b;
        }
      }
    }
  }
  return t;
}

inline TriangleStats clustering_stats(const Graph& g) {
  if (g.directed()) throw std::invalid_argument("clustering coefficient expects an undirected graph");
  TriangleStats s;
  s.triangles = count_triangles(g);
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    const std::uint64_t d = g.degree(static_cast<NodeId>(v));
    s.wedges += d * (d > 0 ? d - 1 : 0) / 2;
  }
  s.coefficient = s.wedges == 0 ? 0.0 : 3.0 * static_cast<double>(s.triangles) / static_cast<double>(s.wedges);
  return s;
}

// 3 * triangles / wedges; 0 when the graph has no wedge.
inline double global_clustering_coefficient(const Graph& g) { return clustering_stats(g).coefficient; }

}  // namespace pprloc
