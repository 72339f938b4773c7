#include "relreg/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "relreg/error.hpp"

namespace relreg {

namespace {

void reject_unknown(const YAML::Node& node, const std::string& section,
                    const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(section + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) throw ConfigError(section + ": unknown key '" + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(what + ": invalid value");
  }
}

StateVec vector_of(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() == 0) throw ConfigError(what + ": expected a list of numbers");
  StateVec v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) v[static_cast<Eigen::Index>(i)] = scalar<double>(node[i], what);
  return v;
}

Bounds bounds_of(const YAML::Node& node, const std::string& what) {
  reject_unknown(node, what, {"lower", "upper"});
  try {
    return Bounds(vector_of(node["lower"], what + ".lower"), vector_of(node["upper"], what + ".upper"));
  } catch (const UsageError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

CostMapConfig costmap_of(const YAML::Node& node, const std::filesystem::path& base_dir) {
  reject_unknown(node, "environment.costmap",
                 {"type", "centers", "amplitude", "width", "raster", "raster_bounds", "c_min", "c_max"});
  CostMapConfig cfg;
  if (node["type"]) cfg.type = scalar<std::string>(node["type"], "costmap.type");
  if (const auto centers = node["centers"]) {
    if (!centers.IsSequence()) throw ConfigError("costmap.centers: expected a list of points");
    for (const auto& c : centers) cfg.centers.push_back(vector_of(c, "costmap.centers"));
  }
  if (node["amplitude"]) cfg.amplitude = scalar<double>(node["amplitude"], "costmap.amplitude");
  if (node["width"]) cfg.width = scalar<double>(node["width"], "costmap.width");
  if (node["raster"]) {
    std::filesystem::path raster = scalar<std::string>(node["raster"], "costmap.raster");
    if (raster.is_relative() && !base_dir.empty()) raster = base_dir / raster;
    cfg.raster = raster.string();
  }
  if (node["raster_bounds"]) cfg.raster_bounds = bounds_of(node["raster_bounds"], "costmap.raster_bounds");
  if (node["c_min"]) cfg.c_min = scalar<double>(node["c_min"], "costmap.c_min");
  if (node["c_max"]) cfg.c_max = scalar<double>(node["c_max"], "costmap.c_max");
  return cfg;
}

EnvironmentConfig environment_of(const YAML::Node& node, const std::filesystem::path& base_dir) {
  reject_unknown(node, "environment",
                 {"world", "bounds", "obstacles", "costmap", "start", "goal", "goal_radius", "step_size"});
  EnvironmentConfig cfg;
  if (node["world"]) cfg.world = scalar<std::string>(node["world"], "environment.world");
  if (node["bounds"]) cfg.bounds = bounds_of(node["bounds"], "environment.bounds");
  if (const auto obstacles = node["obstacles"]) {
    if (!obstacles.IsSequence()) throw ConfigError("environment.obstacles: expected a list");
    std::vector<BoxObstacle> boxes;
    for (const auto& o : obstacles) {
      reject_unknown(o, "environment.obstacles[]", {"lower", "upper"});
      boxes.push_back(BoxObstacle{vector_of(o["lower"], "obstacle.lower"), vector_of(o["upper"], "obstacle.upper")});
    }
    cfg.obstacles = std::move(boxes);
  }
  if (node["costmap"]) cfg.costmap = costmap_of(node["costmap"], base_dir);
  if (node["start"]) cfg.start = vector_of(node["start"], "environment.start");
  if (node["goal"]) cfg.goal = vector_of(node["goal"], "environment.goal");
  if (node["goal_radius"]) cfg.goal_radius = scalar<double>(node["goal_radius"], "environment.goal_radius");
  if (node["step_size"]) cfg.step_size = scalar<double>(node["step_size"], "environment.step_size");
  return cfg;
}

PlannerConfig planner_of(const YAML::Node& node) {
  reject_unknown(node, "planner",
                 {"sampler", "step_size", "epsilon_factor", "p_rel", "p_goal", "lambda", "n_q", "t_init",
                  "iterations", "time_budget_ms", "seed", "stop_on_first_solution"});
  PlannerConfig cfg;
  if (node["sampler"]) cfg.sampler = parse_sampler_kind(scalar<std::string>(node["sampler"], "planner.sampler"));
  if (node["step_size"]) cfg.step_size = scalar<double>(node["step_size"], "planner.step_size");
  if (node["epsilon_factor"]) cfg.epsilon_factor = scalar<double>(node["epsilon_factor"], "planner.epsilon_factor");
  if (node["p_rel"]) cfg.p_rel = scalar<double>(node["p_rel"], "planner.p_rel");
  if (node["p_goal"]) cfg.p_goal = scalar<double>(node["p_goal"], "planner.p_goal");
  if (const auto lambda = node["lambda"]) {
    const StateVec l = vector_of(lambda, "planner.lambda");
    if (l.size() != 3) throw ConfigError("planner.lambda: expected three values");
    cfg.weights = QueueWeights{l[0], l[1], l[2]};
  }
  if (node["n_q"]) cfg.n_q = scalar<int>(node["n_q"], "planner.n_q");
  if (node["t_init"]) cfg.t_init = scalar<double>(node["t_init"], "planner.t_init");
  if (node["iterations"]) cfg.max_iterations = scalar<std::int64_t>(node["iterations"], "planner.iterations");
  if (node["time_budget_ms"]) cfg.time_budget_ms = scalar<double>(node["time_budget_ms"], "planner.time_budget_ms");
  if (node["seed"]) cfg.seed = scalar<std::uint64_t>(node["seed"], "planner.seed");
  if (node["stop_on_first_solution"])
    cfg.stop_on_first_solution = scalar<bool>(node["stop_on_first_solution"], "planner.stop_on_first_solution");
  return cfg;
}

BenchConfig bench_of(const YAML::Node& node) {
  reject_unknown(node, "bench", {"samplers", "trials", "seed", "out", "threads", "deterministic"});
  BenchConfig cfg;
  if (const auto samplers = node["samplers"]) {
    if (!samplers.IsSequence()) throw ConfigError("bench.samplers: expected a list");
    for (const auto& s : samplers) cfg.samplers.push_back(parse_sampler_spec(scalar<std::string>(s, "bench.samplers")));
  }
  if (node["trials"]) cfg.trials = scalar<int>(node["trials"], "bench.trials");
  if (node["seed"]) cfg.seed = scalar<std::uint64_t>(node["seed"], "bench.seed");
  if (node["out"]) cfg.out_dir = scalar<std::string>(node["out"], "bench.out");
  if (node["threads"]) cfg.threads = scalar<int>(node["threads"], "bench.threads");
  if (node["deterministic"]) cfg.deterministic = scalar<bool>(node["deterministic"], "bench.deterministic");
  return cfg;
}

YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  const YAML::Node root = load_yaml(text);
  if (!root.IsMap()) throw ConfigError("run configuration: expected a mapping at the top level");
  reject_unknown(root, "run configuration", {"version", "environment", "planner", "bench"});
  if (!root["environment"]) throw ConfigError("run configuration: missing 'environment' section");
  RunConfig cfg;
  try {
    cfg.environment = environment_of(root["environment"], base_dir);
    if (root["planner"]) cfg.planner = planner_of(root["planner"]);
    if (root["bench"]) cfg.bench = bench_of(root["bench"]);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("run configuration: ") + e.what());
  }
  if (cfg.bench.samplers.empty())
    cfg.bench.samplers.push_back(SamplerSpec{to_string(cfg.planner.sampler), cfg.planner.sampler, cfg.planner.t_init});
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.parent_path());
}

EnvironmentConfig parse_environment_document(const std::string& text,
                                             const std::filesystem::path& base_dir) {
  const YAML::Node root = load_yaml(text);
  if (!root.IsMap() || !root["environment"]) throw ConfigError("expected an 'environment' section");
  try {
    return environment_of(root["environment"], base_dir);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("environment: ") + e.what());
  }
}

}  // namespace relreg
