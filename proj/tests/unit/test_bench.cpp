#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relreg/bench.hpp"
#include "relreg/config.hpp"
#include "relreg/error.hpp"

namespace {

relreg::RunConfig small_run(const std::string& world, int trials, std::int64_t iters) {
  relreg::RunConfig cfg;
  cfg.environment.world = world;
  cfg.planner.max_iterations = iters;
  cfg.bench.trials = trials;
  cfg.bench.seed = 10;
  cfg.bench.deterministic = true;
  cfg.bench.samplers = {relreg::parse_sampler_spec("relevant"), relreg::parse_sampler_spec("informed")};
  return cfg;
}

std::string csv_of(const relreg::BenchResult& r, bool timing) {
  std::ostringstream out;
  relreg::write_csv(out, r.rows, timing);
  return out.str();
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("sampler specs") {
    const auto t = relreg::parse_sampler_spec("transition:0.1");
    CHECK(t.kind == relreg::SamplerKind::transition);
    CHECK(t.t_init == 0.1);
    CHECK(t.label == "transition:0.1");
    CHECK(relreg::parse_sampler_spec("informed").kind == relreg::SamplerKind::informed);
    CHECK_THROWS_AS(relreg::parse_sampler_spec("informed:2"), relreg::ConfigError);
    CHECK_THROWS_AS(relreg::parse_sampler_spec("transition:-1"), relreg::ConfigError);
    CHECK_THROWS_AS(relreg::parse_sampler_spec("a,b"), relreg::ConfigError);
  }

  TEST_CASE("single tiny trial") {
    auto cfg = small_run("multi_obstacle_2d", 1, 5);
    cfg.bench.samplers = {relreg::parse_sampler_spec("relevant")};
    const auto r = relreg::run_benchmark(cfg);
    REQUIRE(r.summary.samplers.size() == 1);
    const auto& s = r.summary.samplers[0];
    CHECK((s.successes == 0 || s.successes == 1));
    CHECK(r.rows.front().record.iteration == 0);
    CHECK(r.rows.back().record.iteration == 5);
  }

  TEST_CASE("trivial world is always solved") {
    relreg::RunConfig cfg;
    cfg.environment.bounds = relreg::Bounds(relreg::StateVec::Zero(2), relreg::StateVec::Constant(2, 10.0));
    cfg.environment.start = relreg::StateVec::Constant(2, 1.0);
    cfg.environment.goal = relreg::StateVec::Constant(2, 9.0);
    cfg.environment.step_size = 0.6;
    cfg.planner.max_iterations = 1500;
    cfg.bench.trials = 20;
    cfg.bench.samplers = {relreg::parse_sampler_spec("informed")};
    const auto r = relreg::run_benchmark(cfg);
    CHECK(r.summary.samplers[0].success_rate == 1.0);
  }

  TEST_CASE("byte-identical CSV for identical configs") {
    const auto cfg = small_run("potential_2d", 3, 400);
    const auto a = csv_of(relreg::run_benchmark(cfg), false);
    const auto b = csv_of(relreg::run_benchmark(cfg), false);
    CHECK(a == b);
    auto parallel = cfg;
    parallel.bench.threads = 3;
    CHECK(csv_of(relreg::run_benchmark(parallel), false) == a);
  }

  TEST_CASE("deterministic mode rejects wall-clock budgets") {
    auto cfg = small_run("potential_2d", 1, 10);
    cfg.planner.time_budget_ms = 5.0;
    CHECK_THROWS_AS(cfg.validate(), relreg::ConfigError);
  }

  TEST_CASE("CSV layout and round trip") {
    std::ostringstream empty;
    relreg::write_csv(empty, {});
    CHECK(empty.str() == std::string(relreg::kCsvHeader) + "\n");

    const auto r = relreg::run_benchmark(small_run("multi_obstacle_2d", 2, 300));
    const auto text = csv_of(r, true);
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == r.rows.size() + 1);
    CHECK(text.find('\r') == std::string::npos);

    std::istringstream in(text);
    const auto back = relreg::read_csv(in);
    REQUIRE(back.size() == r.rows.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].sampler == r.rows[i].sampler);
      CHECK(back[i].record.trial == r.rows[i].record.trial);
      CHECK(back[i].record.iteration == r.rows[i].record.iteration);
      CHECK(back[i].record.elapsed_ms == r.rows[i].record.elapsed_ms);
      CHECK(back[i].record.best_cost == r.rows[i].record.best_cost);
      CHECK(back[i].record.vertices == r.rows[i].record.vertices);
    }
    // Rows are ordered by sampler, trial, iteration.
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      const auto& p = r.rows[i - 1];
      const auto& q = r.rows[i];
      if (p.sampler == q.sampler && p.record.trial == q.record.trial) {
        CHECK(p.record.iteration < q.record.iteration);
        if (p.record.best_cost && q.record.best_cost) CHECK(*q.record.best_cost <= *p.record.best_cost);
      }
    }
  }

  TEST_CASE("summary statistics") {
    std::vector<double> xs = {1, 2, 3, 4};
    CHECK(relreg::quantile_sorted(xs, 0.5) == 2.5);
    CHECK(relreg::quantile_sorted({1, 2, relreg::kInfinity}, 0.5) == 2.0);
    CHECK(relreg::quantile_sorted({1, relreg::kInfinity, relreg::kInfinity}, 0.5) == relreg::kInfinity);

    const auto cfg = small_run("multi_obstacle_2d", 4, 600);
    const auto r = relreg::run_benchmark(cfg);
    for (const auto& s : r.summary.samplers) {
      CHECK(s.trials == 4);
      CHECK(s.checkpoints.back().clock == 600.0);
      CHECK(s.final.median == s.checkpoints.back().median);
      for (std::size_t i = 1; i < s.checkpoints.size(); ++i)
        CHECK(s.checkpoints[i].median <= s.checkpoints[i - 1].median);
    }
  }

  TEST_CASE("plot script") {
    const auto cfg = small_run("potential_2d", 2, 200);
    const auto r = relreg::run_benchmark(cfg);
    const auto a = relreg::plot_script(r.summary, "records.csv");
    CHECK(a == relreg::plot_script(r.summary, "records.csv"));
    CHECK(a.find("\"relevant\"") != std::string::npos);
    CHECK(a.find("\"informed\"") != std::string::npos);
    CHECK(a.find("success") != std::string::npos);
    CHECK(a.find("records.csv") != std::string::npos);
  }

  TEST_CASE("outputs on disk") {
    auto cfg = small_run("potential_2d", 2, 100);
    const auto dir = std::filesystem::temp_directory_path() / "relreg_bench_outputs";
    std::filesystem::remove_all(dir);
    cfg.bench.out_dir = dir.string();
    const auto r = relreg::run_benchmark(cfg);
    relreg::write_outputs(r, cfg);
    CHECK(std::filesystem::exists(dir / "records.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(std::filesystem::exists(dir / "plot.py"));
    std::ifstream in(dir / "records.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == relreg::kCsvHeader);
    std::filesystem::remove_all(dir);
  }
}

TEST_SUITE("config") {
  TEST_CASE("full run configuration") {
    const auto cfg = relreg::parse_run_config(R"(
version: 1
environment:
  world: terrain_2d
planner:
  sampler: relevant
  p_rel: 0.4
  lambda: [10, 5, 100]
  n_q: 8
  time_budget_ms: 250
  stop_on_first_solution: true
bench:
  samplers: [relevant, informed, "transition:0.1"]
  trials: 5
  seed: 3
  out: out/terrain
  threads: 2
)");
    CHECK(cfg.environment.world == "terrain_2d");
    CHECK(cfg.planner.p_rel == 0.4);
    CHECK(cfg.planner.n_q == 8);
    CHECK(*cfg.planner.time_budget_ms == 250.0);
    CHECK(cfg.planner.stop_on_first_solution);
    REQUIRE(cfg.bench.samplers.size() == 3);
    CHECK(cfg.bench.samplers[2].t_init == 0.1);
    CHECK(cfg.bench.trials == 5);
    CHECK(cfg.bench.threads == 2);
    CHECK_NOTHROW(cfg.validate());
  }

  TEST_CASE("custom environment section") {
    const auto cfg = relreg::parse_run_config(R"(
environment:
  bounds: {lower: [0, 0], upper: [5, 5]}
  start: [0.5, 0.5]
  goal: [4.5, 4.5]
  step_size: 0.4
  obstacles:
    - {lower: [2, 0], upper: [3, 4]}
  costmap:
    type: potential
    centers: [[1, 4]]
    amplitude: 3
planner:
  iterations: 100
)");
    const auto env = relreg::build_environment(cfg.environment);
    CHECK(env.obstacles.size() == 1);
    CHECK(env.goal_radius == doctest::Approx(0.2));
    CHECK(env.costmap.as_potential()->amplitude == 3.0);
    CHECK(cfg.bench.samplers.size() == 1);
    CHECK(cfg.bench.samplers[0].label == "relevant");
  }

  TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(relreg::parse_run_config("environment: {world: [unclosed"), relreg::ConfigError);
    CHECK_THROWS_AS(relreg::parse_run_config("environment: {world: terrain_2d}\nplanner: {colour: red}"),
                    relreg::ConfigError);
    CHECK_THROWS_AS(relreg::parse_run_config("planner: {iterations: 5}"), relreg::ConfigError);
    CHECK_THROWS_AS(relreg::parse_run_config("environment: {world: terrain_2d}\nplanner: {sampler: bogus}"),
                    relreg::ConfigError);
    CHECK_THROWS_AS(relreg::parse_run_config("environment: {world: terrain_2d}\nplanner: {n_q: ten}"),
                    relreg::ConfigError);
    CHECK_THROWS_AS(relreg::load_run_config("/nonexistent/run.yaml"), relreg::ConfigError);
    const auto bad_world = relreg::parse_run_config("environment: {world: mars}\nplanner: {iterations: 5}");
    CHECK_THROWS_AS(bad_world.validate(), relreg::ConfigError);
  }
}
