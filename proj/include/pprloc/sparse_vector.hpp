#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace pprloc {

using NodeId = std::uint32_t;

// Index -> value map over node ids with implicit zeros. Entries equal to zero
// may exist transiently until canonicalize() is called.
class SparseVector {
 public:
  using Map = std::map<NodeId, double>;

  SparseVector() = default;

  static SparseVector unit(NodeId i, double value = 1.0) {
    SparseVector v;
    v.entries_.emplace(i, value);
    return v;
  }

  static SparseVector from_dense(const std::vector<double>& dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0.0) v.entries_.emplace(static_cast<NodeId>(i), dense[i]);
    }
    return v;
  }

  void set(NodeId i, double value) { entries_[i] = value; }
  void add(NodeId i, double value) { entries_[i] += value; }

  double get(NodeId i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? 0.0 : it->second;
  }

  bool contains(NodeId i) const { return entries_.count(i) != 0; }

  // Drops stored exact zeros.
  void canonicalize() { std::erase_if(entries_, [](const auto& e) { return e.second == 0.0; }); }

  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double norm1() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += std::abs(v);
    return s;
  }

  double sum() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += v;
    return s;
  }

  double min_value() const {
    double m = 0.0;
    bool first = true;
    for (const auto& [i, v] : entries_) {
      if (first || v < m) m = v;
      first = false;
    }
    return m;
  }

  std::vector<double> to_dense(std::size_t n) const {
    std::vector<double> out(n, 0.0);
    for (const auto& [i, v] : entries_) out.at(i) = v;
    return out;
  }

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  const Map& entries() const { return entries_; }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Map entries_;
};

}  // namespace pprloc
