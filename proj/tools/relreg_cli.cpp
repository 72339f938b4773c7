// relreg: plan single trials and run seeded convergence benchmarks.
//
//   relreg worlds
//   relreg validate-config --config run.yaml
//   relreg plan  [--config run.yaml | --world NAME] [--seed N] [--sampler S] [--iterations N] [--time-budget-ms T]
//   relreg bench --config run.yaml [--out DIR] [--seed N] [--trials N] [--sampler S] ...
//
// Exit status: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "relreg/bench.hpp"
#include "relreg/config.hpp"
#include "relreg/error.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config;
  std::string world;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<std::string> samplers;
  std::optional<double> time_budget_ms;
  std::optional<std::int64_t> iterations;
};

relreg::RunConfig resolve(const Overrides& o, bool for_bench) {
  relreg::RunConfig cfg;
  if (!o.config.empty()) {
    cfg = relreg::load_run_config(o.config);
  } else if (!o.world.empty()) {
    cfg.environment.world = o.world;
    cfg.bench.samplers.push_back(relreg::parse_sampler_spec("relevant"));
  } else {
    throw relreg::ConfigError("either --config or --world is required");
  }
  if (!o.world.empty() && !o.config.empty()) cfg.environment.world = o.world;
  if (!o.out.empty()) cfg.bench.out_dir = o.out;
  if (o.trials) cfg.bench.trials = *o.trials;
  if (o.iterations) cfg.planner.max_iterations = *o.iterations;
  if (o.time_budget_ms) cfg.planner.time_budget_ms = *o.time_budget_ms;
  if (!o.samplers.empty()) {
    cfg.bench.samplers.clear();
    for (const auto& s : o.samplers) cfg.bench.samplers.push_back(relreg::parse_sampler_spec(s));
    cfg.planner.sampler = cfg.bench.samplers.front().kind;
    cfg.planner.t_init = cfg.bench.samplers.front().t_init;
  }
  if (o.seed) {
    cfg.planner.seed = *o.seed;
    cfg.bench.seed = *o.seed;
  }
  if (!cfg.planner.max_iterations && !cfg.planner.time_budget_ms)
    cfg.planner.max_iterations = for_bench ? 2000 : 5000;
  cfg.validate();
  return cfg;
}

int cmd_worlds() {
  for (const auto& w : relreg::registered_worlds())
    std::cout << std::left << std::setw(20) << w.name << w.dim << "D  " << w.description << '\n';
  return 0;
}

int cmd_validate(const Overrides& o) {
  resolve(o, true);
  std::cout << "ok\n";
  return 0;
}

int cmd_plan(const Overrides& o) {
  const auto cfg = resolve(o, false);
  const auto env = relreg::build_environment(cfg.environment);
  const auto result = relreg::plan(env, cfg.planner);
  std::cout << std::setprecision(17);
  std::cout << "world " << env.name << '\n';
  std::cout << "sampler " << relreg::to_string(cfg.planner.sampler) << '\n';
  std::cout << "seed " << cfg.planner.seed << '\n';
  std::cout << "iterations " << result.iterations << '\n';
  std::cout << "vertices " << result.vertices << '\n';
  if (!result.best_cost) {
    std::cout << "cost none\n";
    return 0;
  }
  std::cout << "cost " << *result.best_cost << '\n';
  std::cout << "path " << result.best_path.size() << '\n';
  for (const auto& x : result.best_path) {
    for (Eigen::Index i = 0; i < x.size(); ++i) std::cout << (i ? " " : "") << x[i];
    std::cout << '\n';
  }
  return 0;
}

int cmd_bench(const Overrides& o) {
  const auto cfg = resolve(o, true);
  const auto result = relreg::run_benchmark(cfg);
  relreg::write_outputs(result, cfg);
  std::cout << "world " << result.summary.world << '\n';
  for (const auto& s : result.summary.samplers) {
    std::cout << std::left << std::setw(18) << s.label << " success " << s.successes << '/' << s.trials
              << "  final median ";
    if (std::isfinite(s.final.median)) std::cout << s.final.median;
    else std::cout << "none";
    std::cout << '\n';
  }
  std::cout << "wrote " << cfg.bench.out_dir << "/{records.csv,summary.json,plot.py}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relevant Region sampling planner and benchmark harness", "relreg"};
  app.require_subcommand(1);
  Overrides o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration (YAML)");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Seed (trial t of a benchmark uses seed + t)");
    sub->add_option("--trials", o.trials, "Trials per sampler");
    sub->add_option("--sampler", o.samplers, "Sampler: uniform, informed, relevant, transition[:T_init]");
    sub->add_option("--time-budget-ms", o.time_budget_ms, "Wall-clock budget per trial");
    sub->add_option("--iterations", o.iterations, "Iteration budget per trial");
  };

  app.add_subcommand("worlds", "List registered environments");
  auto* validate = app.add_subcommand("validate-config", "Check a run configuration");
  add_common(validate);
  auto* plan = app.add_subcommand("plan", "Run one planning trial and print the path and cost");
  add_common(plan);
  plan->add_option("--world", o.world, "Registered world (instead of or overriding --config)");
  auto* bench = app.add_subcommand("bench", "Run a multi-trial benchmark");
  add_common(bench);
  bench->add_option("--world", o.world, "Registered world overriding the configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand("worlds")) return cmd_worlds();
    if (app.got_subcommand(validate)) return cmd_validate(o);
    if (app.got_subcommand(plan)) return cmd_plan(o);
    if (app.got_subcommand(bench)) return cmd_bench(o);
  } catch (const relreg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const relreg::UsageError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
