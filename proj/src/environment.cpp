#include "relreg/environment.hpp"

#include <algorithm>
#include <cmath>

#include "relreg/error.hpp"

namespace relreg {

bool BoxObstacle::contains_interior(const StateVec& x) const {
  return (x.array() > lower.array()).all() && (x.array() < upper.array()).all();
}

double BoxObstacle::distance(const StateVec& x) const {
  const StateVec clamped = x.cwiseMax(lower).cwiseMin(upper);
  return (x - clamped).norm();
}

bool Environment::is_state_valid(const StateVec& x) const {
  if (!bounds.contains(x)) return false;
  return std::none_of(obstacles.begin(), obstacles.end(),
                      [&](const BoxObstacle& box) { return box.contains_interior(x); });
}

bool Environment::is_motion_valid(const StateVec& a, const StateVec& b) const {
  const double length = (b - a).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(length / collision_resolution())));
  if (!is_state_valid(a) || !is_state_valid(b)) return false;
  const StateVec delta = b - a;
  StateVec x(a.size());
  for (int i = 1; i < steps; ++i) {
    x.noalias() = a + (static_cast<double>(i) / steps) * delta;
    if (!is_state_valid(x)) return false;
  }
  return true;
}

bool Environment::in_goal(const StateVec& x) const { return (x - goal).norm() <= goal_radius; }

void Environment::validate() const {
  const auto d = bounds.dim();
  if (start.size() != d || goal.size() != d)
    throw ConfigError("environment: start/goal dimension does not match bounds");
  for (const auto& box : obstacles) {
    if (box.lower.size() != d || box.upper.size() != d)
      throw ConfigError("environment: obstacle dimension does not match bounds");
    if (!(box.lower.array() <= box.upper.array()).all())
      throw ConfigError("environment: obstacle lower corner exceeds upper corner");
  }
  if (!(goal_radius > 0.0)) throw ConfigError("environment: goal radius must be positive");
  if (!(step_size > 0.0)) throw ConfigError("environment: step size must be positive");
  if (!is_state_valid(start)) throw ConfigError("environment: start state is not valid");
  if (!is_state_valid(goal)) throw ConfigError("environment: goal state is not valid");
  for (const auto& box : obstacles)
    if (box.distance(goal) < goal_radius && (box.upper - box.lower).minCoeff() > 0.0)
      throw ConfigError("environment: goal ball intersects an obstacle");
  if (in_goal(start)) throw ConfigError("environment: start lies inside the goal ball");
  if (const auto* t = costmap.as_terrain()) {
    if (t->bounds.lower[0] > bounds.lower[0] || t->bounds.upper[0] < bounds.upper[0] ||
        t->bounds.lower[1] > bounds.lower[1] || t->bounds.upper[1] < bounds.upper[1])
      throw ConfigError("environment: terrain raster does not cover the search bounds");
  }
  if (const auto* p = costmap.as_potential())
    if (p->centers.front().size() != d)
      throw ConfigError("environment: potential centers do not match the dimension");
}

}  // namespace relreg
