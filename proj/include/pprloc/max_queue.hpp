#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "pprloc/sparse_vector.hpp"

namespace pprloc {

// Max-priority queue over node values with lazy invalidation. Every change to a
// node's value is recorded with push(); stale records are discarded when they
// surface. The value array is owned by the caller and read at pop time, so a
// record is current iff it still equals values[node].
//
// Order: larger value first, equal values by smaller node id.
class LazyMaxQueue {
 public:
  explicit LazyMaxQueue(std::span<const double> values) : values_(values) {}

  void push(NodeId node, double value) { heap_.push({value, node}); }

  // Node holding the exact maximum of the positive values pushed so far, or
  // nullopt when none is left. The node is not removed; callers change its
  // value and push again.
  std::optional<NodeId> top() {
    while (!heap_.empty()) {
      const Record& r = heap_.top();
      if (r.value > 0.0 && values_[r.node] == r.value) return r.node;
      heap_.pop();
    }
    return std::nullopt;
  }

  std::size_t records() const { return heap_.size(); }

 private:
  struct Record {
    double value;
    NodeId node;
    bool operator<(const Record& o) const {
      if (value != o.value) return value < o.value;
      return node > o.node;
    }
  };

  std::span<const double> values_;
  std::priority_queue<Record> heap_;
};

}  // namespace pprloc
