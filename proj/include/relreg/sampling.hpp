#pragma once

#include <cstdint>
#include <optional>

#include "relreg/core.hpp"
#include "relreg/environment.hpp"
#include "relreg/graph.hpp"
#include "relreg/relevant_queue.hpp"
#include "relreg/rng.hpp"

namespace relreg {

/// Returns the goal point with probability p_goal, else a uniform draw over the bounds.
StateVec uniform_goal_biased(RngStream& rng, const Environment& env, double p_goal);

/// Direct sampler for the L2 Informed Set {x : |x - start| + |x - goal| < c}
/// clipped to a bounding box.
///
/// Draws are uniform over the prolate hyperspheroid with foci start and goal:
/// a point of the unit ball is scaled to radii (c/2, sqrt(c^2 - f^2)/2, ...)
/// and mapped onto the start-goal axis with a Householder reflection. Draws
/// outside the box, or on the boundary after rounding, are rejected.
class InformedSampler {
public:
  static constexpr int kMaxAttempts = 1'000'000;

  InformedSampler(StateVec start, StateVec goal, Bounds bounds);

  /// Focal distance |goal - start|, the smallest admissible solution cost.
  double min_cost() const { return focal_distance_; }

  /// Throws DegenerateSetError unless min_cost() < c < inf.
  StateVec sample(RngStream& rng, double c) const;

  bool contains(const StateVec& x, double c) const;

private:
  StateVec start_;
  StateVec goal_;
  Bounds bounds_;
  StateVec center_;
  StateVec reflector_;  // Householder vector mapping e_0 onto the focal axis; empty if identity
  double focal_distance_;
};

StateVec informed_sample(RngStream& rng, const StateVec& start, const StateVec& goal, double c,
                         const Bounds& bounds);

/// Planner-facing form: uniform_goal_biased while c is infinite, otherwise the
/// goal with probability p_goal and an Informed Set draw for the rest.
StateVec informed_sample(RngStream& rng, const Environment& env, const InformedSampler& sampler,
                         double c, double p_goal);

/// Scalar inputs of the step-limit problem around a relevant vertex v_p.
struct StepLimitInputs {
  double g_gp;       // c - g(v_p)
  double h_vg;       // |v_p - goal|
  double cos_theta;  // angle between v_p - goal and the sampled direction
  double c_vp = 1.0;  // C(v_p)
  double epsilon;

  static StepLimitInputs from_geometry(const StateVec& vertex, double g_vertex, double c,
                                       const StateVec& goal, const StateVec& direction,
                                       double c_vertex, double epsilon);
};

/// gamma_uni = (g_gp^2 - h^2) / (2 (h cos(theta) + g_gp)) without the epsilon clamp.
double gamma_uniform_raw(const StepLimitInputs& in);

/// min(gamma_uni, epsilon). Throws UsageError unless g_gp > h_vg >= 0.
double step_limit_uniform(const StepLimitInputs& in);

/// Roots of (C^2 - 1) y^2 - 2 (g_gp C + h cos) y + g_gp^2 - h^2 = 0 for C > 1.
struct StepLimitRoots {
  double gamma1;
  double gamma2;
  double delta;
};
StepLimitRoots step_limit_roots(const StepLimitInputs& in);

/// Step limit under the constant-cost approximation d(v_p, v_p + y e) ~ y C(v_p):
/// min(gamma1, epsilon), or min(g_gp / C, epsilon) when the discriminant
/// vanishes. Reduces to step_limit_uniform when C(v_p) == 1.
double step_limit_general(const StepLimitInputs& in);

struct RelevantSampleParams {
  double epsilon;
  int n_q = 10;
  int max_attempts = 16;
};

struct RelevantSample {
  StateVec x;
  VertexId vertex;
  double gamma_rel;
  double gamma;
};

/// Expands a relevant vertex chosen from the queue: draws a direction, bounds
/// the step by the step limit, and scales it by u^(1/d). Every returned point
/// lies in the box, satisfies the constant-cost relevant-set inequality and the
/// Informed Set inequality for bound c. nullopt when no vertex is relevant or
/// no attempt produced an admissible point.
std::optional<RelevantSample> relevant_region_sample(PlannerGraph& graph, const Environment& env,
                                                     RelevantQueue& queue, double c,
                                                     RngStream& rng,
                                                     const RelevantSampleParams& params);

/// Metropolis-style filter on cost transitions.
struct TransitionState {
  double temperature;
  double t_init;
  double k;               // cost normalisation constant
  double cost_range = 0.0;
  double min_cost_seen = kInfinity;
  double max_cost_seen = -kInfinity;
  std::int64_t n_fail = 0;

  static constexpr double kMaxTemperatureFactor = 1048576.0;  // 2^20
  static constexpr double kMinTemperatureFactor = 1e-6;

  TransitionState(double t_init, double k);

  double max_temperature() const { return t_init * kMaxTemperatureFactor; }
  double min_temperature() const { return t_init * kMinTemperatureFactor; }

  /// Extends the observed cost range.
  void observe(double cost);
};

/// Accepts downhill moves; accepts uphill moves with probability
/// exp(-dc / (k T)). Rejection doubles T; an accepted uphill move divides T by
/// 2^(dc / cost_range).
bool transition_test(TransitionState& ts, double c_from, double c_to, RngStream& rng);

}  // namespace relreg
