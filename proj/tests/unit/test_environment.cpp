#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "relreg/environment.hpp"
#include "relreg/error.hpp"

using relreg::StateVec;

namespace {
StateVec v2(double x, double y) { return (StateVec(2) << x, y).finished(); }

// Exact test: does the closed segment meet the open interior of the box?
bool segment_hits_interior(const StateVec& a, const StateVec& b, const relreg::BoxObstacle& box) {
  double t0 = 0.0, t1 = 1.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double d = b[i] - a[i];
    if (d == 0.0) {
      if (!(a[i] > box.lower[i] && a[i] < box.upper[i])) return false;
      continue;
    }
    double lo = (box.lower[i] - a[i]) / d, hi = (box.upper[i] - a[i]) / d;
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
    if (t0 >= t1) return false;
  }
  return t0 < t1;
}

relreg::Environment custom_empty() {
  relreg::EnvironmentConfig cfg;
  cfg.bounds = relreg::Bounds(v2(0, 0), v2(10, 10));
  cfg.start = v2(1, 1);
  cfg.goal = v2(9, 9);
  cfg.step_size = 0.5;
  cfg.obstacles = std::vector<relreg::BoxObstacle>{};
  return relreg::build_environment(cfg);
}
}  // namespace

TEST_SUITE("environment") {
  TEST_CASE("state validity") {
    const auto env = relreg::build_environment("multi_obstacle_2d");
    CHECK(env.is_state_valid(v2(3, 2)));       // obstacle corner
    CHECK(env.is_state_valid(v2(4.5, 2)));     // obstacle edge
    CHECK_FALSE(env.is_state_valid(v2(4.5, 5)));
    CHECK_FALSE(env.is_state_valid(v2(-0.1, 5)));
    CHECK_FALSE(env.is_state_valid(v2(1, 20.5)));
  }

  TEST_CASE("motion validity basics") {
    const auto env = relreg::build_environment("multi_obstacle_2d");
    CHECK(env.is_motion_valid(v2(1, 1), v2(2, 1)));
    CHECK_FALSE(env.is_motion_valid(v2(2.5, 5), v2(6.5, 5)));
    relreg::RngStream rng(12);
    for (int i = 0; i < 500; ++i) {
      StateVec x = relreg::sample_uniform(rng, env.bounds);
      REQUIRE(env.is_motion_valid(x, x) == env.is_state_valid(x));
    }
  }

  TEST_CASE("motion validity agrees with exact slab test") {
    const auto env = relreg::build_environment("multi_obstacle_2d");
    relreg::RngStream rng(77);
    int tested = 0, disagree = 0;
    while (tested < 1000) {
      StateVec a = relreg::sample_uniform(rng, env.bounds);
      if (!env.is_state_valid(a)) continue;
      StateVec b = a + relreg::sample_unit_direction(rng, 2) * rng.uniform(0.1, 3.0);
      if (!env.is_state_valid(b)) continue;
      ++tested;
      bool exact = true;
      for (const auto& box : env.obstacles)
        if (segment_hits_interior(a, b, box)) exact = false;
      if (exact != env.is_motion_valid(a, b)) ++disagree;
    }
    CHECK(disagree < 10);
  }

  TEST_CASE("goal ball is closed") {
    auto env = custom_empty();
    CHECK(env.goal_radius == 0.25);
    CHECK(env.in_goal(env.goal));
    CHECK(env.in_goal(env.goal + v2(0.25, 0)));
    CHECK_FALSE(env.in_goal(env.goal + v2(0.25 + 1e-9, 0)));
  }

  TEST_CASE("registered worlds") {
    const auto& worlds = relreg::registered_worlds();
    CHECK(worlds.size() == 8);
    for (const auto& w : worlds) {
      const auto env = relreg::build_environment(w.name);
      CHECK(env.dim() == w.dim);
      CHECK_NOTHROW(env.validate());
      CHECK(env.costmap.eval(env.start) >= 1.0);
    }
    CHECK(relreg::build_environment("multi_obstacle_4d").step_size == 0.6);
    CHECK(relreg::build_environment("multi_obstacle_6d").step_size == 1.2);
    CHECK(relreg::build_environment("terrain_2d").step_size == 0.3);
    CHECK(relreg::build_environment("potential_4d").step_size == 0.6);
    CHECK(relreg::build_environment("potential_6d").step_size == 1.5);
    CHECK(relreg::build_environment("box7d").bounds.upper[6] == doctest::Approx(M_PI));
    CHECK_THROWS_AS(relreg::build_environment("no_such_world"), relreg::ConfigError);
  }

  TEST_CASE("potential world parameters") {
    const auto env = relreg::build_environment("potential_2d");
    const auto* p = env.costmap.as_potential();
    REQUIRE(p != nullptr);
    CHECK(p->centers.size() == 2);
    CHECK(p->amplitude == 9.0);
    CHECK(p->width == 5.0);
  }

  TEST_CASE("multi-obstacle layout shape") {
    const auto env = relreg::build_environment("multi_obstacle_2d");
    CHECK(env.obstacles.size() >= 10);
    CHECK(env.obstacles.size() <= 15);
    // Occupied fraction by Monte Carlo.
    relreg::RngStream rng(1);
    int blocked = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
      if (!env.is_state_valid(relreg::sample_uniform(rng, env.bounds))) ++blocked;
    CHECK(blocked / double(n) == doctest::Approx(0.3).epsilon(0.25));
  }

  TEST_CASE("extrusion property") {
    const auto base = relreg::build_environment("multi_obstacle_2d");
    for (const char* name : {"multi_obstacle_4d", "multi_obstacle_6d"}) {
      const auto env = relreg::build_environment(name);
      const int d = env.dim();
      REQUIRE(env.obstacles.size() == base.obstacles.size());
      for (std::size_t k = 0; k < env.obstacles.size(); ++k) {
        for (int i = 2; i < d; ++i) {
          CHECK(env.obstacles[k].lower[i] == -1.0);
          CHECK(env.obstacles[k].upper[i] == 1.0);
        }
      }
      relreg::RngStream rng(d);
      for (int trial = 0; trial < 20000; ++trial) {
        StateVec x = relreg::sample_uniform(rng, env.bounds);
        if (trial % 2) x.tail(d - 2) *= 0.5;  // more points inside the slab
        const StateVec p = x.head(2);
        const bool extra_inside = (x.tail(d - 2).array().abs() < 1.0).all();
        bool expected = true;
        for (const auto& box : base.obstacles)
          if (box.contains_interior(p) && extra_inside) expected = false;
        REQUIRE(env.is_state_valid(x) == expected);
      }
    }
  }

  TEST_CASE("custom world validation") {
    relreg::EnvironmentConfig cfg;
    cfg.bounds = relreg::Bounds(v2(0, 0), v2(10, 10));
    cfg.start = v2(1, 1);
    cfg.goal = v2(9, 9);
    CHECK_THROWS_AS(relreg::build_environment(cfg), relreg::ConfigError);  // no step size
    cfg.step_size = 0.5;
    cfg.obstacles = std::vector<relreg::BoxObstacle>{{v2(0, 0), v2(2, 2)}};
    CHECK_THROWS_AS(relreg::build_environment(cfg), relreg::ConfigError);  // start blocked
    cfg.obstacles = std::vector<relreg::BoxObstacle>{};
    cfg.goal = v2(1.1, 1.1);
    CHECK_THROWS_AS(relreg::build_environment(cfg), relreg::ConfigError);  // start in goal
  }
}
