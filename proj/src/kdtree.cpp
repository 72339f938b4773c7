#include "relreg/kdtree.hpp"

#include <algorithm>
#include <limits>

#include "relreg/error.hpp"

namespace relreg {

double KdTree::squared_distance(std::uint32_t slot, const StateVec& x) const {
  const double* p = point(slot);
  double d2 = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double diff = p[i] - x[i];
    d2 += diff * diff;
  }
  return d2;
}

void KdTree::insert(const StateVec& x, std::uint32_t id) {
  if (x.size() != dim_) throw UsageError("KdTree::insert: dimension mismatch");
  const auto slot = static_cast<std::uint32_t>(ids_.size());
  ids_.push_back(id);
  coords_.insert(coords_.end(), x.data(), x.data() + dim_);

  if (nodes_.empty()) {
    nodes_.push_back(Node{slot, -1, -1, 0});
    return;
  }
  std::int32_t current = 0;
  for (;;) {
    Node& node = nodes_[current];
    const bool go_left = x[node.axis] < point(node.slot)[node.axis];
    std::int32_t& child = go_left ? node.left : node.right;
    if (child < 0) {
      const int axis = (node.axis + 1) % dim_;
      child = static_cast<std::int32_t>(nodes_.size());
      nodes_.push_back(Node{slot, -1, -1, axis});  // may reallocate; `node` is not used after this
      return;
    }
    current = child;
  }
}

std::uint32_t KdTree::nearest(const StateVec& x) const {
  if (empty()) throw UsageError("nearest: the index is empty");
  if (x.size() != dim_) throw UsageError("nearest: dimension mismatch");
  double best_d2 = std::numeric_limits<double>::infinity();
  std::uint32_t best_id = std::numeric_limits<std::uint32_t>::max();
  if (size() < kBruteForceLimit) {
    for (std::uint32_t slot = 0; slot < ids_.size(); ++slot) {
      const double d2 = squared_distance(slot, x);
      if (d2 < best_d2 || (d2 == best_d2 && ids_[slot] < best_id)) {
        best_d2 = d2;
        best_id = ids_[slot];
      }
    }
    return best_id;
  }
  nearest_recursive(0, x, best_d2, best_id);
  return best_id;
}

void KdTree::nearest_recursive(std::int32_t index, const StateVec& x, double& best_d2,
                               std::uint32_t& best_id) const {
  if (index < 0) return;
  const Node& node = nodes_[index];
  const double d2 = squared_distance(node.slot, x);
  const std::uint32_t id = ids_[node.slot];
  if (d2 < best_d2 || (d2 == best_d2 && id < best_id)) {
    best_d2 = d2;
    best_id = id;
  }
  const double diff = x[node.axis] - point(node.slot)[node.axis];
  const std::int32_t near_side = diff < 0.0 ? node.left : node.right;
  const std::int32_t far_side = diff < 0.0 ? node.right : node.left;
  nearest_recursive(near_side, x, best_d2, best_id);
  // Equality keeps ties reachable so the lowest id can win.
  if (diff * diff <= best_d2) nearest_recursive(far_side, x, best_d2, best_id);
}

std::vector<std::uint32_t> KdTree::radius(const StateVec& x, double r) const {
  if (x.size() != dim_) throw UsageError("radius: dimension mismatch");
  std::vector<std::uint32_t> out;
  if (empty() || !(r >= 0.0)) return out;
  const double r2 = r * r;
  if (size() < kBruteForceLimit) {
    for (std::uint32_t slot = 0; slot < ids_.size(); ++slot)
      if (squared_distance(slot, x) <= r2) out.push_back(ids_[slot]);
  } else {
    radius_recursive(0, x, r2, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::radius_recursive(std::int32_t index, const StateVec& x, double r2,
                              std::vector<std::uint32_t>& out) const {
  while (index >= 0) {
    const Node& node = nodes_[index];
    if (squared_distance(node.slot, x) <= r2) out.push_back(ids_[node.slot]);
    const double diff = x[node.axis] - point(node.slot)[node.axis];
    const std::int32_t near_side = diff < 0.0 ? node.left : node.right;
    const std::int32_t far_side = diff < 0.0 ? node.right : node.left;
    if (diff * diff <= r2) radius_recursive(far_side, x, r2, out);
    index = near_side;
  }
}

}  // namespace relreg
