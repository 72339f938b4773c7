#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>

#include "relreg/config.hpp"
#include "relreg/environment.hpp"
#include "relreg/error.hpp"
#include "relreg/pgm.hpp"

namespace relreg {

namespace detail {
extern const std::string_view kMultiObstacleLayout;
}

namespace {

StateVec filled(int d, double value) { return StateVec::Constant(d, value); }

// Extra axes of the extruded multi-obstacle worlds span [-3, 3]; obstacles cover [-1, 1].
constexpr double kExtrudedHalfRange = 3.0;
constexpr double kExtrusionHalfLength = 1.0;

Environment multi_obstacle(int d) {
  Environment base = multi_obstacle_base_layout();
  if (d == 2) {
    base.name = "multi_obstacle_2d";
    return base;
  }
  Environment env;
  env.name = "multi_obstacle_" + std::to_string(d) + "d";
  StateVec lo = filled(d, -kExtrudedHalfRange), hi = filled(d, kExtrudedHalfRange);
  lo.head(2) = base.bounds.lower;
  hi.head(2) = base.bounds.upper;
  env.bounds = Bounds(lo, hi);
  for (const auto& box : base.obstacles) {
    BoxObstacle extruded{filled(d, -kExtrusionHalfLength), filled(d, kExtrusionHalfLength)};
    extruded.lower.head(2) = box.lower;
    extruded.upper.head(2) = box.upper;
    env.obstacles.push_back(extruded);
  }
  env.start = StateVec::Zero(d);
  env.start.head(2) = base.start;
  env.goal = StateVec::Zero(d);
  env.goal.head(2) = base.goal;
  env.costmap = CostMap::uniform();
  env.step_size = d == 4 ? 0.6 : 1.2;
  return env;
}

Environment potential(int d) {
  Environment env;
  env.name = "potential_" + std::to_string(d) + "d";
  env.bounds = Bounds(filled(d, 0.0), filled(d, 10.0));
  env.start = filled(d, 1.0);
  env.goal = filled(d, 9.0);
  StateVec first = filled(d, 5.0), second = filled(d, 5.0);
  first[0] -= 1.5;
  first[1] += 1.0;
  second[0] += 1.5;
  second[1] -= 1.0;
  env.costmap = CostMap::potential({first, second}, 9.0, 5.0);
  env.step_size = d == 2 ? 0.5 : d == 4 ? 0.6 : 1.5;
  return env;
}

Environment terrain() {
  Environment env;
  env.name = "terrain_2d";
  env.bounds = Bounds(filled(2, 0.0), filled(2, 10.0));
  env.start = filled(2, 0.5);
  env.goal = filled(2, 9.5);
  env.costmap = CostMap::terrain(builtin_terrain_raster(), env.bounds, 1.0, 10.0);
  env.step_size = 0.3;
  return env;
}

Environment box7d() {
  constexpr int d = 7;
  constexpr std::uint64_t kLayoutSeed = 7007;
  Environment env;
  env.name = "box7d";
  env.bounds = Bounds(filled(d, -std::numbers::pi), filled(d, std::numbers::pi));
  env.start = filled(d, -2.0);
  env.goal = filled(d, 2.0);
  env.costmap = CostMap::uniform();
  env.step_size = 0.7;
  env.goal_radius = env.step_size / 2.0;
  RngStream rng(kLayoutSeed);
  while (env.obstacles.size() < 8) {
    StateVec center(d), half(d);
    for (int i = 0; i < d; ++i) {
      center[i] = rng.uniform(-1.8, 1.8);
      half[i] = rng.uniform(0.4, 1.4);
    }
    BoxObstacle box{center - half, center + half};
    if (box.distance(env.start) <= 0.5 || box.distance(env.goal) <= env.goal_radius + 0.5) continue;
    env.obstacles.push_back(box);
  }
  return env;
}

CostMap make_costmap(const CostMapConfig& cfg, const Environment& env) {
  if (cfg.type == "uniform") return CostMap::uniform();
  if (cfg.type == "potential") {
    return CostMap::potential(cfg.centers, cfg.amplitude, cfg.width);
  }
  if (cfg.type == "terrain") {
    Grid2D raster = cfg.raster.empty() ? builtin_terrain_raster() : read_pgm(cfg.raster);
    Bounds planar = cfg.raster_bounds.value_or(
        Bounds(env.bounds.lower.head(2), env.bounds.upper.head(2)));
    return CostMap::terrain(std::move(raster), std::move(planar), cfg.c_min, cfg.c_max);
  }
  throw ConfigError("unknown costmap type '" + cfg.type + "' (expected uniform, potential, terrain)");
}

}  // namespace

const std::vector<WorldInfo>& registered_worlds() {
  static const std::vector<WorldInfo> worlds = {
      {"multi_obstacle_2d", 2, "12 boxes in [0,20]^2, uniform cost, eta 0.6"},
      {"multi_obstacle_4d", 4, "2D layout extruded to [-1,1] on axes 3-4, uniform cost, eta 0.6"},
      {"multi_obstacle_6d", 6, "2D layout extruded to [-1,1] on axes 3-6, uniform cost, eta 1.2"},
      {"terrain_2d", 2, "procedural canyon raster on [0,10]^2, cost 1..10, eta 0.3"},
      {"potential_2d", 2, "two Gaussian danger regions on [0,10]^2, eta 0.5"},
      {"potential_4d", 4, "two Gaussian danger regions on [0,10]^4, eta 0.6"},
      {"potential_6d", 6, "two Gaussian danger regions on [0,10]^6, eta 1.5"},
      {"box7d", 7, "8 fixed random boxes in [-pi,pi]^7, uniform cost, eta 0.7"},
  };
  return worlds;
}

Environment multi_obstacle_base_layout() {
  const auto cfg = parse_environment_document(std::string(detail::kMultiObstacleLayout));
  return build_environment(cfg);
}

Grid2D builtin_terrain_raster(int width, int height) {
  std::vector<double> values(static_cast<std::size_t>(width) * height);
  auto ridge = [](double s, double t, double s0, double pass_t) {
    const double across = std::exp(-(s - s0) * (s - s0) / (2.0 * 0.6 * 0.6));
    const double gap = 1.0 - 0.55 * std::exp(-(t - pass_t) * (t - pass_t) / (2.0 * 0.8 * 0.8));
    return across * gap;
  };
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double x = 10.0 * col / (width - 1);
      const double y = 10.0 * (1.0 - static_cast<double>(row) / (height - 1));
      const double s = (x + y) / std::numbers::sqrt2;
      const double t = (y - x) / std::numbers::sqrt2;
      double v = ridge(s, t, 4.7, 2.5) + ridge(s, t, 9.4, -2.5);
      v += 0.12 * 0.5 * (std::sin(2.3 * x) * std::cos(1.7 * y) + 1.0);
      values[static_cast<std::size_t>(row) * width + col] = std::clamp(v, 0.0, 1.0);
    }
  }
  return Grid2D(width, height, std::move(values));
}

Environment build_environment(const std::string& world) {
  EnvironmentConfig cfg;
  cfg.world = world;
  return build_environment(cfg);
}

Environment build_environment(const EnvironmentConfig& config) {
  Environment env;
  const std::string& w = config.world;
  const bool custom = w == "custom" || w.empty();
  if (w == "multi_obstacle_2d") env = multi_obstacle(2);
  else if (w == "multi_obstacle_4d") env = multi_obstacle(4);
  else if (w == "multi_obstacle_6d") env = multi_obstacle(6);
  else if (w == "terrain_2d") env = terrain();
  else if (w == "potential_2d") env = potential(2);
  else if (w == "potential_4d") env = potential(4);
  else if (w == "potential_6d") env = potential(6);
  else if (w == "box7d") env = box7d();
  else if (!custom) throw ConfigError("unknown world '" + w + "'");

  if (custom) {
    if (!config.bounds || !config.start || !config.goal || !config.step_size)
      throw ConfigError("custom world needs bounds, start, goal and step_size");
    env.name = "custom";
  }
  if (config.bounds) env.bounds = *config.bounds;
  if (config.obstacles) env.obstacles = *config.obstacles;
  if (config.start) env.start = *config.start;
  if (config.goal) env.goal = *config.goal;
  if (config.step_size) env.step_size = *config.step_size;
  if (config.costmap) env.costmap = make_costmap(*config.costmap, env);
  if (config.goal_radius) env.goal_radius = *config.goal_radius;
  else if (custom || config.step_size || env.goal_radius <= 0.0) env.goal_radius = env.step_size / 2.0;
  env.validate();
  return env;
}

}  // namespace relreg
