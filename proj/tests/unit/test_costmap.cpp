#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "relreg/costmap.hpp"
#include "relreg/environment.hpp"
#include "relreg/error.hpp"
#include "relreg/pgm.hpp"

using relreg::CostMap;
using relreg::StateVec;

namespace {
StateVec v2(double x, double y) { return (StateVec(2) << x, y).finished(); }

// Composite Simpson with Richardson extrapolation on a very fine grid.
double quadrature_oracle(const CostMap& cm, const StateVec& a, const StateVec& b) {
  auto simpson = [&](int n) {
    double s = cm.eval(a) + cm.eval(b);
    for (int i = 1; i < n; ++i) {
      const double t = static_cast<double>(i) / n;
      s += (i % 2 ? 4.0 : 2.0) * cm.eval(a + t * (b - a));
    }
    return s / (3.0 * n);
  };
  const double s1 = simpson(20000), s2 = simpson(40000);
  return (b - a).norm() * (s2 + (s2 - s1) / 15.0);
}

CostMap constant_terrain(double value) {
  relreg::Grid2D g(2, 2, {0, 0, 0, 0});
  return CostMap::terrain(g, relreg::Bounds(v2(-100, -100), v2(100, 100)), value, value);
}
}  // namespace

TEST_SUITE("costmap") {
  TEST_CASE("uniform cost is one") {
    auto cm = CostMap::uniform();
    CHECK(cm.eval(v2(3, -7)) == 1.0);
    CHECK(relreg::edge_cost(cm, v2(0, 0), v2(3, 4), 1) == 5.0);
    CHECK(relreg::edge_cost(cm, v2(0, 0), v2(3, 4), 37) == 5.0);
  }

  TEST_CASE("potential peak value") {
    auto cm = CostMap::potential({v2(0, 0), v2(1000, 1000)});
    CHECK(cm.eval(v2(0, 0)) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(cm.eval(v2(2, 1)) == doctest::Approx(1.0 + 9.0 * std::exp(-5.0 / 5.0)).epsilon(1e-12));
  }

  TEST_CASE("constant map integrates exactly") {
    auto cm = constant_terrain(3.0);
    CHECK(relreg::edge_cost(cm, v2(0, 0), v2(1, 0), 1) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(relreg::edge_cost(cm, v2(0, 0), v2(1, 0), 9) == doctest::Approx(3.0).epsilon(1e-14));
  }

  TEST_CASE("terrain zero raster gives c_min") {
    relreg::Grid2D g(3, 3, {0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto cm = CostMap::terrain(g, relreg::Bounds(v2(0, 0), v2(1, 1)));
    CHECK(cm.eval(v2(0.25, 0.75)) == 1.0);
    CHECK_THROWS_AS(cm.eval(v2(1.5, 0.5)), relreg::DomainError);
  }

  TEST_CASE("terrain orientation: row 0 is the top") {
    // 2x2 raster, top row bright, bottom row dark.
    relreg::Grid2D g(2, 2, {1, 1, 0, 0});
    auto cm = CostMap::terrain(g, relreg::Bounds(v2(0, 0), v2(1, 1)), 1.0, 10.0);
    CHECK(cm.eval(v2(0.5, 1.0)) == doctest::Approx(10.0));
    CHECK(cm.eval(v2(0.5, 0.0)) == doctest::Approx(1.0));
    CHECK(cm.eval(v2(0.5, 0.5)) == doctest::Approx(5.5));
  }

  TEST_CASE("potential edge cost matches quadrature oracle") {
    auto cm = CostMap::potential({v2(0, 0)});
    const double oracle = quadrature_oracle(cm, v2(-5, 0), v2(5, 0));
    // Closed form: 10 + 9*sqrt(5*pi)*erf(5/sqrt(5))
    CHECK(oracle == doctest::Approx(10.0 + 9.0 * std::sqrt(5.0 * M_PI) * std::erf(std::sqrt(5.0))).epsilon(1e-10));
    const double ec = relreg::edge_cost(cm, v2(-5, 0), v2(5, 0), 0.06);
    CHECK(std::abs(ec - oracle) / oracle < 1e-4);
  }

  TEST_CASE("midpoint rule converges at second order") {
    auto cm = CostMap::potential({v2(0.3, 0.1), v2(2, -1)});
    const StateVec a = v2(-2, -1), b = v2(3, 2);
    const double exact = quadrature_oracle(cm, a, b);
    const double e1 = std::abs(relreg::edge_cost(cm, a, b, 8) - exact);
    const double e2 = std::abs(relreg::edge_cost(cm, a, b, 32) - exact);
    CHECK(e2 < e1);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
  }

  TEST_CASE("edge cost dominates Euclidean distance") {
    relreg::RngStream rng(9);
    std::vector<CostMap> maps = {CostMap::uniform(), CostMap::potential({v2(5, 5), v2(2, 7)}),
                                 relreg::build_environment("terrain_2d").costmap};
    for (const auto& cm : maps) {
      for (int i = 0; i < 3400; ++i) {
        StateVec a = v2(rng.uniform(0, 10), rng.uniform(0, 10));
        StateVec b = v2(rng.uniform(0, 10), rng.uniform(0, 10));
        REQUIRE(relreg::edge_cost(cm, a, b, 0.3) >= (b - a).norm() - 1e-12);
      }
    }
  }

  TEST_CASE("additivity along a segment") {
    auto cm = CostMap::potential({v2(1, 1)});
    relreg::RngStream rng(4);
    for (int i = 0; i < 200; ++i) {
      StateVec a = v2(rng.uniform(-3, 3), rng.uniform(-3, 3));
      StateVec c = v2(rng.uniform(-3, 3), rng.uniform(-3, 3));
      StateVec b = a + rng.uniform01() * (c - a);
      REQUIRE(relreg::edge_cost(cm, a, c, 0.01) <=
              relreg::edge_cost(cm, a, b, 0.01) + relreg::edge_cost(cm, b, c, 0.01) + 1e-6);
    }
  }

  TEST_CASE("terrain is Lipschitz continuous") {
    const auto env = relreg::build_environment("terrain_2d");
    relreg::RngStream rng(8);
    double worst = 0.0;
    const double delta = 1e-4;
    for (int i = 0; i < 2000; ++i) {
      StateVec x = v2(rng.uniform(0, 10 - delta), rng.uniform(0, 10 - delta));
      StateVec y = x + v2(delta, 0);
      worst = std::max(worst, std::abs(env.costmap.eval(x) - env.costmap.eval(y)) / delta);
    }
    // Raster spacing ~0.04 and a 9-unit range bound the slope well below 9/0.04.
    CHECK(worst < 9.0 / 0.039);
  }

  TEST_CASE("cost never below one") {
    const auto env = relreg::build_environment("terrain_2d");
    relreg::RngStream rng(2);
    for (int i = 0; i < 10000; ++i)
      REQUIRE(env.costmap.eval(relreg::sample_uniform(rng, env.bounds)) >= 1.0);
  }

  TEST_CASE("invalid constructions") {
    CHECK_THROWS_AS(relreg::Grid2D(2, 2, {0, 0.5, 1.2, 0}), relreg::UsageError);
    CHECK_THROWS_AS(relreg::edge_cost(CostMap::uniform(), v2(0, 0), v2(1, 1), 0), relreg::UsageError);
    relreg::Grid2D g(2, 2, {0, 0, 0, 0});
    CHECK_THROWS_AS(CostMap::terrain(g, relreg::Bounds(v2(0, 0), v2(1, 1)), 0.5, 2.0), relreg::UsageError);
  }

  TEST_CASE("PGM round trip and header parsing") {
    relreg::Grid2D g(3, 2, {0, 51.0 / 255, 1, 102.0 / 255, 153.0 / 255, 204.0 / 255});
    const auto path = std::filesystem::temp_directory_path() / "relreg_test_roundtrip.pgm";
    relreg::write_pgm(path, g);
    const auto back = relreg::read_pgm(path);
    CHECK(back.width == 3);
    CHECK(back.height == 2);
    for (std::size_t i = 0; i < g.values.size(); ++i) CHECK(back.values[i] == doctest::Approx(g.values[i]));
    std::filesystem::remove(path);

    std::string with_comment = std::string("P5\n# made by hand\n2 2\n# max\n100\n") + std::string("\x00\x32\x64\x0a", 4);
    std::istringstream in(with_comment);
    const auto c = relreg::read_pgm(in);
    CHECK(c.values[1] == doctest::Approx(0.5));
    CHECK(c.values[2] == doctest::Approx(1.0));

    std::istringstream bad("P2\n2 2\n255\n0 0 0 0\n");
    CHECK_THROWS_AS(relreg::read_pgm(bad), relreg::ConfigError);
    std::istringstream truncated(std::string("P5\n2 2\n255\n\x01", 12));
    CHECK_THROWS_AS(relreg::read_pgm(truncated), relreg::ConfigError);
  }
}
