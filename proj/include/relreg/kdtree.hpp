#pragma once

#include <cstdint>
#include <vector>

#include "relreg/core.hpp"

namespace relreg {

/// Incremental point kd-tree keyed by dense integer ids.
///
/// Points are never removed and the tree is never rebalanced; the split axis
/// cycles with depth. Queries fall back to a linear scan while the index holds
/// fewer than kBruteForceLimit points. Distance ties resolve to the lowest id.
class KdTree {
public:
  static constexpr std::size_t kBruteForceLimit = 64;

  explicit KdTree(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  void insert(const StateVec& x, std::uint32_t id);

  /// Id of the closest point. Precondition: not empty.
  std::uint32_t nearest(const StateVec& x) const;

  /// Ids of all points within distance r (inclusive), in ascending id order.
  std::vector<std::uint32_t> radius(const StateVec& x, double r) const;

private:
  struct Node {
    std::uint32_t slot;  // index into ids_/coords_
    std::int32_t left = -1;
    std::int32_t right = -1;
    int axis;
  };

  const double* point(std::uint32_t slot) const { return coords_.data() + static_cast<std::size_t>(slot) * dim_; }
  double squared_distance(std::uint32_t slot, const StateVec& x) const;

  void nearest_recursive(std::int32_t node, const StateVec& x, double& best_d2,
                         std::uint32_t& best_id) const;
  void radius_recursive(std::int32_t node, const StateVec& x, double r2,
                        std::vector<std::uint32_t>& out) const;

  int dim_;
  std::vector<double> coords_;
  std::vector<std::uint32_t> ids_;
  std::vector<Node> nodes_;
};

}  // namespace relreg
