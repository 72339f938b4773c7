#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relreg/environment.hpp"
#include "relreg/graph.hpp"
#include "relreg/relevant_queue.hpp"
#include "relreg/rng.hpp"
#include "relreg/sampling.hpp"

namespace relreg {

enum class SamplerKind { uniform, informed, relevant, transition };

std::string to_string(SamplerKind kind);
/// Throws ConfigError for unknown names.
SamplerKind parse_sampler_kind(const std::string& name);

struct PlannerConfig {
  std::optional<double> step_size;  // eta; the world's default when unset
  double epsilon_factor = 1.5;      // epsilon = epsilon_factor * eta
  double p_rel = 0.5;
  double p_goal = 0.05;
  QueueWeights weights{};
  int n_q = 10;
  SamplerKind sampler = SamplerKind::relevant;
  double t_init = 1.0;
  std::optional<std::int64_t> max_iterations;
  std::optional<double> time_budget_ms;
  std::uint64_t seed = 1;
  bool stop_on_first_solution = false;

  /// Throws ConfigError on out-of-range values or a missing budget.
  void validate() const;
};

/// One convergence sample of a planning trial.
struct BenchRecord {
  int trial = 0;
  std::int64_t iteration = 0;
  double elapsed_ms = 0.0;
  std::optional<double> best_cost;
  std::size_t vertices = 0;
};

/// Geometric checkpoint schedule on either wall time (ms) or iterations.
struct CheckpointSchedule {
  bool by_time = false;
  double first = 10.0;
  double ratio = 1.5;

  static CheckpointSchedule for_config(const PlannerConfig& config);
  /// Checkpoints strictly below the horizon, followed by the horizon itself.
  std::vector<double> points(double horizon) const;
  double next_after(double value) const;
};

struct SamplerStats {
  std::int64_t relevant_samples = 0;
  std::int64_t informed_samples = 0;
  std::int64_t uniform_samples = 0;
  std::int64_t relevant_fallbacks = 0;
  std::int64_t transition_rejections = 0;
  std::int64_t extensions = 0;
};

struct PlanResult {
  std::optional<double> best_cost;
  std::vector<StateVec> best_path;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::int64_t iterations = 0;
  bool proven_optimal = false;
  double elapsed_ms = 0.0;
  SamplerStats stats;
  std::vector<BenchRecord> records;
};

/// Sampling-based planner with global (shortest-path) rewiring after every
/// extension. The exploration strategy is selected by PlannerConfig::sampler.
///
/// The goal is a ball around env.goal, so the bound handed to the Informed Set
/// and relevant-region machinery is c_i + goal_radius: with the goal point as
/// heuristic target, |x - goal| - goal_radius is the admissible cost-to-go.
class Planner {
public:
  Planner(const Environment& env, PlannerConfig config);

  /// One loop body: refresh c_i, draw a sample, extend, rewire, record state.
  void iterate();

  /// Steers from the nearest vertex toward x_rand by at most eta, connects the
  /// new state to every collision-free neighbour, and hangs it off the best
  /// one. Returns the new vertex id, or nullopt if nothing was added.
  std::optional<VertexId> extend(const StateVec& x_rand);

  double best_cost() const { return best_cost_; }
  double sampling_bound() const { return best_cost_ + env_.goal_radius; }
  bool solved() const { return best_goal_.has_value(); }
  bool proven_optimal() const { return proven_optimal_; }
  std::int64_t iterations() const { return iterations_; }

  double step_size() const { return step_size_; }
  double epsilon() const { return epsilon_; }
  double connection_radius() const;

  const Environment& environment() const { return env_; }
  const PlannerConfig& config() const { return config_; }
  const PlannerGraph& graph() const { return graph_; }
  PlannerGraph& graph() { return graph_; }
  RelevantQueue& queue() { return queue_; }
  const SamplerStats& stats() const { return stats_; }
  const std::optional<TransitionState>& transition_state() const { return transition_; }
  RngStream& rng() { return rng_; }

  std::optional<VertexId> best_goal_vertex() const { return best_goal_; }
  std::vector<StateVec> best_path() const;

  /// Relevant-region sample for the current bound (queue refreshed first).
  std::optional<RelevantSample> sample_relevant();

  PlanResult result() const;

private:
  StateVec draw_sample();
  void refresh_best_cost();
  void exploit(VertexId added, const std::vector<VertexId>& neighbours);

  const Environment& env_;
  PlannerConfig config_;
  double step_size_;
  double epsilon_;
  double radius_constant_;
  RngStream rng_;
  PlannerGraph graph_;
  RelevantQueue queue_;
  InformedSampler informed_;
  std::optional<TransitionState> transition_;
  std::vector<VertexId> goal_vertices_;
  std::optional<VertexId> best_goal_;
  double best_cost_ = kInfinity;
  bool proven_optimal_ = false;
  std::int64_t iterations_ = 0;
  SamplerStats stats_;
};

/// Runs a planner until its budget is spent, recording at geometric checkpoints.
PlanResult plan(const Environment& env, const PlannerConfig& config, int trial = 0);

}  // namespace relreg
