#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relreg/core.hpp"
#include "relreg/costmap.hpp"

namespace relreg {

struct BoxObstacle {
  StateVec lower;
  StateVec upper;

  /// Strict interior test; the boundary belongs to free space.
  bool contains_interior(const StateVec& x) const;
  /// Distance from x to the closed box (0 inside).
  double distance(const StateVec& x) const;
};

/// Planning problem: search box, obstacles, cost map, start, and goal ball.
struct Environment {
  std::string name;
  Bounds bounds;
  std::vector<BoxObstacle> obstacles;
  CostMap costmap;
  StateVec start;
  StateVec goal;
  double goal_radius = 0.0;
  /// Default steering step size for this world.
  double step_size = 1.0;

  int dim() const { return bounds.dim(); }

  bool is_state_valid(const StateVec& x) const;
  /// Checkpoints at spacing <= step_size / 20, both endpoints included.
  bool is_motion_valid(const StateVec& a, const StateVec& b) const;
  bool in_goal(const StateVec& x) const;

  double collision_resolution() const { return step_size / 20.0; }

  /// Throws ConfigError when the problem is malformed or trivial.
  void validate() const;
};

inline bool is_state_valid(const Environment& env, const StateVec& x) { return env.is_state_valid(x); }
inline bool is_motion_valid(const Environment& env, const StateVec& a, const StateVec& b) {
  return env.is_motion_valid(a, b);
}
inline bool in_goal(const Environment& env, const StateVec& x) { return env.in_goal(x); }

struct CostMapConfig {
  std::string type = "uniform";  // uniform | potential | terrain
  std::vector<StateVec> centers;
  double amplitude = 9.0;
  double width = 5.0;
  std::string raster;  // PGM path; empty selects the built-in terrain raster
  std::optional<Bounds> raster_bounds;
  double c_min = 1.0;
  double c_max = 10.0;
};

/// Names a registered world ("custom" for a fully inline description); every
/// optional field overrides the registered value.
struct EnvironmentConfig {
  std::string world = "custom";
  std::optional<Bounds> bounds;
  std::optional<std::vector<BoxObstacle>> obstacles;
  std::optional<CostMapConfig> costmap;
  std::optional<StateVec> start;
  std::optional<StateVec> goal;
  std::optional<double> goal_radius;
  std::optional<double> step_size;
};

struct WorldInfo {
  std::string name;
  int dim;
  std::string description;
};

const std::vector<WorldInfo>& registered_worlds();

Environment build_environment(const EnvironmentConfig& config);
Environment build_environment(const std::string& world);

/// The procedural canyon raster behind terrain_2d.
Grid2D builtin_terrain_raster(int width = 256, int height = 256);

/// 2D layout of the multi-obstacle world, parsed from the compiled-in data file.
Environment multi_obstacle_base_layout();

}  // namespace relreg
