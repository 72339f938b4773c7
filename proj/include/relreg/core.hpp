#pragma once

#include <Eigen/Core>

#include "relreg/rng.hpp"

namespace relreg {

/// A point of the d-dimensional search space.
using StateVec = Eigen::VectorXd;

/// Axis-aligned box lower <= x <= upper.
struct Bounds {
  StateVec lower;
  StateVec upper;

  Bounds() = default;
  Bounds(StateVec lo, StateVec hi);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const StateVec& x) const;
  double volume() const;
  StateVec center() const { return 0.5 * (lower + upper); }
};

/// Euclidean distance, the consistent heuristic used everywhere.
double l2_heuristic(const StateVec& a, const StateVec& b);

/// Uniform direction on the unit (d-1)-sphere from normalized Gaussian draws.
StateVec sample_unit_direction(RngStream& rng, int dim);

/// u^(1/d) * gamma_rel for u in (0, 1].
double radial_offset_from_uniform(double u, double gamma_rel, int dim);

/// radial_offset_from_uniform with u drawn from the stream; result in (0, gamma_rel].
double radial_offset(RngStream& rng, double gamma_rel, int dim);

StateVec sample_uniform(RngStream& rng, const Bounds& bounds);

}  // namespace relreg
