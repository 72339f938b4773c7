#include "relreg/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relreg/error.hpp"

namespace relreg {

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::uniform: return "uniform";
    case SamplerKind::informed: return "informed";
    case SamplerKind::relevant: return "relevant";
    case SamplerKind::transition: return "transition";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(const std::string& name) {
  if (name == "uniform") return SamplerKind::uniform;
  if (name == "informed") return SamplerKind::informed;
  if (name == "relevant") return SamplerKind::relevant;
  if (name == "transition") return SamplerKind::transition;
  throw ConfigError("unknown sampler '" + name + "' (expected uniform, informed, relevant, transition)");
}

void PlannerConfig::validate() const {
  if (step_size && !(*step_size > 0.0)) throw ConfigError("planner: step_size must be positive");
  if (!(epsilon_factor > 0.0)) throw ConfigError("planner: epsilon_factor must be positive");
  if (!(p_rel >= 0.0 && p_rel < 1.0)) throw ConfigError("planner: p_rel must be in [0, 1)");
  if (!(p_goal >= 0.0 && p_goal < 1.0)) throw ConfigError("planner: p_goal must be in [0, 1)");
  if (!(weights.selections > 0.0 && weights.degree > 0.0 && weights.cost > 0.0))
    throw ConfigError("planner: lambda weights must be positive");
  if (n_q < 1) throw ConfigError("planner: n_q must be at least 1");
  if (!(t_init > 0.0)) throw ConfigError("planner: t_init must be positive");
  if (max_iterations && *max_iterations < 0) throw ConfigError("planner: iterations must be non-negative");
  if (time_budget_ms && !(*time_budget_ms >= 0.0)) throw ConfigError("planner: time_budget_ms must be non-negative");
  if (!max_iterations && !time_budget_ms)
    throw ConfigError("planner: set iterations and/or time_budget_ms");
}

CheckpointSchedule CheckpointSchedule::for_config(const PlannerConfig& config) {
  if (config.time_budget_ms) return CheckpointSchedule{true, 1.0, 1.5};
  return CheckpointSchedule{false, 10.0, 1.5};
}

double CheckpointSchedule::next_after(double value) const {
  double point = first;
  while (point <= value) point *= ratio;
  return point;
}

std::vector<double> CheckpointSchedule::points(double horizon) const {
  std::vector<double> out;
  for (double point = first; point < horizon; point *= ratio) {
    out.push_back(by_time ? point : std::ceil(point));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.push_back(horizon);
  return out;
}

namespace {

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

}  // namespace

Planner::Planner(const Environment& env, PlannerConfig config)
    : env_(env),
      config_(std::move(config)),
      step_size_(config_.step_size.value_or(env.step_size)),
      epsilon_(config_.epsilon_factor * step_size_),
      rng_(config_.seed),
      graph_(env.dim()),
      queue_(config_.weights),
      informed_(env.start, env.goal, env.bounds) {
  if (!(step_size_ > 0.0)) throw ConfigError("planner: step size must be positive");
  if (config_.n_q < 1) throw ConfigError("planner: n_q must be at least 1");
  const int d = env.dim();
  // Asymptotic-optimality radius constant with the bounding box as free-space measure.
  radius_constant_ = 2.0 * std::pow(1.0 + 1.0 / d, 1.0 / d) *
                     std::pow(env.bounds.volume() / unit_ball_volume(d), 1.0 / d);
  graph_.add_root(env.start);
  if (config_.sampler == SamplerKind::transition) {
    const double k = 0.5 * (env.costmap.eval(env.start) + env.costmap.eval(env.goal));
    transition_.emplace(config_.t_init, k);
    transition_->observe(env.costmap.eval(env.start));
  }
  if (env.in_goal(env.start)) {
    goal_vertices_.push_back(0);
    refresh_best_cost();
  }
}

double Planner::connection_radius() const {
  const double n = static_cast<double>(graph_.size()) + 1.0;
  const double shrinking = radius_constant_ * std::pow(std::log(n) / n, 1.0 / env_.dim());
  return std::min(step_size_, shrinking);
}

void Planner::refresh_best_cost() {
  for (VertexId v : goal_vertices_) {
    const double g = graph_.g(v);
    if (g < best_cost_ || (g == best_cost_ && best_goal_ && v < *best_goal_)) {
      best_cost_ = g;
      best_goal_ = v;
    }
  }
}

std::optional<RelevantSample> Planner::sample_relevant() {
  const double bound = sampling_bound();
  if (!std::isfinite(bound)) return std::nullopt;
  queue_.update(graph_, bound, env_.goal);
  return relevant_region_sample(graph_, env_, queue_, bound, rng_,
                                RelevantSampleParams{epsilon_, config_.n_q});
}

StateVec Planner::draw_sample() {
  const double u = rng_.uniform01();
  const double bound = sampling_bound();
  switch (config_.sampler) {
    case SamplerKind::uniform:
    case SamplerKind::transition:
      ++stats_.uniform_samples;
      return uniform_goal_biased(rng_, env_, config_.p_goal);
    case SamplerKind::relevant:
      if (u < config_.p_rel && std::isfinite(bound)) {
        if (auto sample = sample_relevant()) {
          ++stats_.relevant_samples;
          return std::move(sample->x);
        }
        ++stats_.relevant_fallbacks;
      }
      [[fallthrough]];
    case SamplerKind::informed:
      ++stats_.informed_samples;
      return informed_sample(rng_, env_, informed_, bound, config_.p_goal);
  }
  return uniform_goal_biased(rng_, env_, config_.p_goal);
}

void Planner::iterate() {
  refresh_best_cost();
  if (proven_optimal_) return;
  if (std::isfinite(best_cost_) && sampling_bound() <= informed_.min_cost() + 1e-12) {
    proven_optimal_ = true;
    return;
  }
  ++iterations_;
  const StateVec x_rand = draw_sample();
  extend(x_rand);
  refresh_best_cost();
}

std::optional<VertexId> Planner::extend(const StateVec& x_rand) {
  const VertexId nearest = graph_.nearest(x_rand);
  const StateVec& from = graph_.state(nearest);
  const double distance = (x_rand - from).norm();
  if (distance <= PlannerGraph::kDuplicateTolerance) return std::nullopt;
  const StateVec x_new =
      distance <= step_size_ ? x_rand : StateVec(from + (step_size_ / distance) * (x_rand - from));
  if (!env_.is_state_valid(x_new)) return std::nullopt;

  if (transition_) {
    const double c_from = env_.costmap.eval(from);
    const double c_to = env_.costmap.eval(x_new);
    if (!transition_test(*transition_, c_from, c_to, rng_)) {
      ++stats_.transition_rejections;
      return std::nullopt;
    }
  }

  std::vector<VertexId> candidates = graph_.near(x_new, connection_radius());
  if (!std::binary_search(candidates.begin(), candidates.end(), nearest))
    candidates.insert(std::lower_bound(candidates.begin(), candidates.end(), nearest), nearest);

  struct Link {
    VertexId vertex;
    double cost;
  };
  std::vector<Link> links;
  links.reserve(candidates.size());
  for (VertexId u : candidates) {
    const StateVec& xu = graph_.state(u);
    if ((xu - x_new).norm() <= PlannerGraph::kDuplicateTolerance) return std::nullopt;
    if (!env_.is_motion_valid(xu, x_new)) continue;
    links.push_back(Link{u, edge_cost(env_.costmap, xu, x_new, step_size_)});
  }
  if (links.empty()) return std::nullopt;

  const auto best = std::min_element(links.begin(), links.end(), [&](const Link& a, const Link& b) {
    const double ga = graph_.g(a.vertex) + a.cost;
    const double gb = graph_.g(b.vertex) + b.cost;
    return ga < gb || (ga == gb && a.vertex < b.vertex);
  });
  const auto id = graph_.insert_vertex(x_new, best->vertex, best->cost);
  if (!id) return std::nullopt;

  std::vector<VertexId> neighbours;
  neighbours.reserve(links.size());
  for (const auto& link : links) {
    neighbours.push_back(link.vertex);
    if (link.vertex != best->vertex) graph_.add_edge(link.vertex, *id, link.cost);
  }
  ++stats_.extensions;
  if (transition_) transition_->observe(env_.costmap.eval(x_new));
  if (env_.in_goal(x_new)) goal_vertices_.push_back(*id);
  exploit(*id, neighbours);
  return id;
}

void Planner::exploit(VertexId added, const std::vector<VertexId>& neighbours) {
  const VertexId seeds[] = {added};
  const auto changed = graph_.rewire_global(seeds);
  if (config_.sampler != SamplerKind::relevant) return;
  queue_.touch(added);
  for (VertexId v : neighbours) queue_.touch(v);
  for (VertexId v : changed) queue_.touch(v);
}

std::vector<StateVec> Planner::best_path() const {
  std::vector<StateVec> path;
  if (!best_goal_) return path;
  for (VertexId v : graph_.path_to(*best_goal_)) path.push_back(graph_.state(v));
  return path;
}

PlanResult Planner::result() const {
  PlanResult r;
  if (best_goal_) r.best_cost = best_cost_;
  r.best_path = best_path();
  r.vertices = graph_.size();
  r.edges = graph_.edge_count();
  r.iterations = iterations_;
  r.proven_optimal = proven_optimal_;
  r.stats = stats_;
  return r;
}

PlanResult plan(const Environment& env, const PlannerConfig& config, int trial) {
  config.validate();
  Planner planner(env, config);
  const auto schedule = CheckpointSchedule::for_config(config);
  const auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  };
  std::vector<BenchRecord> records;
  auto record = [&](double elapsed) {
    BenchRecord rec;
    rec.trial = trial;
    rec.iteration = planner.iterations();
    rec.elapsed_ms = elapsed;
    if (planner.solved()) rec.best_cost = planner.best_cost();
    rec.vertices = planner.graph().size();
    records.push_back(rec);
  };

  record(0.0);
  const std::int64_t max_iterations =
      config.max_iterations.value_or(std::numeric_limits<std::int64_t>::max());
  const double time_budget = config.time_budget_ms.value_or(kInfinity);
  double next_checkpoint = schedule.first;
  double elapsed = 0.0;
  while (planner.iterations() < max_iterations) {
    if (planner.proven_optimal()) break;
    if (config.stop_on_first_solution && planner.solved()) break;
    planner.iterate();
    elapsed = elapsed_ms();
    const double clock = schedule.by_time ? elapsed : static_cast<double>(planner.iterations());
    if (clock >= next_checkpoint) {
      record(elapsed);
      next_checkpoint = schedule.next_after(clock);
    }
    if (elapsed >= time_budget) break;
  }
  elapsed = elapsed_ms();
  if (records.back().iteration != planner.iterations()) record(elapsed);

  PlanResult result = planner.result();
  result.elapsed_ms = elapsed;
  result.records = std::move(records);
  return result;
}

}  // namespace relreg
