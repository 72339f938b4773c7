#include "relreg/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "relreg/error.hpp"

namespace relreg {

StateVec uniform_goal_biased(RngStream& rng, const Environment& env, double p_goal) {
  if (!(p_goal >= 0.0 && p_goal < 1.0)) throw UsageError("uniform_goal_biased: p_goal must be in [0, 1)");
  if (rng.uniform01() < p_goal) return env.goal;
  return sample_uniform(rng, env.bounds);
}

InformedSampler::InformedSampler(StateVec start, StateVec goal, Bounds bounds)
    : start_(std::move(start)), goal_(std::move(goal)), bounds_(std::move(bounds)) {
  if (start_.size() != goal_.size() || start_.size() != bounds_.dim())
    throw UsageError("InformedSampler: dimension mismatch");
  center_ = 0.5 * (start_ + goal_);
  focal_distance_ = (goal_ - start_).norm();
  if (focal_distance_ > 0.0) {
    StateVec axis = (goal_ - start_) / focal_distance_;
    StateVec w = -axis;
    w[0] += 1.0;
    if (w.norm() > 1e-12) reflector_ = w / w.norm();
  }
}

bool InformedSampler::contains(const StateVec& x, double c) const {
  return (x - start_).norm() + (x - goal_).norm() < c;
}

StateVec InformedSampler::sample(RngStream& rng, double c) const {
  if (!std::isfinite(c)) throw DegenerateSetError("informed_sample: cost bound is not finite");
  if (!(c > focal_distance_))
    throw DegenerateSetError("informed_sample: cost bound does not exceed the focal distance");
  const int d = bounds_.dim();
  const double transverse = std::sqrt(c * c - focal_distance_ * focal_distance_) / 2.0;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    StateVec y = sample_unit_direction(rng, d) * std::pow(1.0 - rng.uniform01(), 1.0 / d);
    y[0] *= c / 2.0;
    y.tail(d - 1) *= transverse;
    if (reflector_.size() > 0) y -= 2.0 * reflector_.dot(y) * reflector_;
    StateVec x = center_ + y;
    if (bounds_.contains(x) && contains(x, c)) return x;
  }
  throw DegenerateSetError("informed_sample: no admissible draw inside the bounds");
}

StateVec informed_sample(RngStream& rng, const StateVec& start, const StateVec& goal, double c,
                         const Bounds& bounds) {
  return InformedSampler(start, goal, bounds).sample(rng, c);
}

StateVec informed_sample(RngStream& rng, const Environment& env, const InformedSampler& sampler,
                         double c, double p_goal) {
  if (!std::isfinite(c)) return uniform_goal_biased(rng, env, p_goal);
  if (!(p_goal >= 0.0 && p_goal < 1.0)) throw UsageError("informed_sample: p_goal must be in [0, 1)");
  if (rng.uniform01() < p_goal) return env.goal;
  return sampler.sample(rng, c);
}

StepLimitInputs StepLimitInputs::from_geometry(const StateVec& vertex, double g_vertex, double c,
                                               const StateVec& goal, const StateVec& direction,
                                               double c_vertex, double epsilon) {
  const StateVec to_vertex = vertex - goal;
  const double h = to_vertex.norm();
  const double cos_theta = h > 0.0 ? std::clamp(to_vertex.dot(direction) / h, -1.0, 1.0) : 0.0;
  return StepLimitInputs{c - g_vertex, h, cos_theta, c_vertex, epsilon};
}

namespace {

void check_inputs(const StepLimitInputs& in) {
  if (!(in.epsilon > 0.0)) throw UsageError("step limit: epsilon must be positive");
  if (!(in.h_vg >= 0.0)) throw UsageError("step limit: h(v_p, goal) must be non-negative");
  if (!(in.g_gp > in.h_vg))
    throw UsageError("step limit: vertex is not relevant (c - g(v_p) <= h(v_p, goal))");
  if (!(in.cos_theta >= -1.0 && in.cos_theta <= 1.0))
    throw UsageError("step limit: cos(theta) outside [-1, 1]");
  if (!(in.c_vp >= 1.0) || !std::isfinite(in.c_vp))
    throw UsageError("step limit: C(v_p) must be finite and at least 1");
}

}  // namespace

double gamma_uniform_raw(const StepLimitInputs& in) {
  check_inputs(in);
  const double g = in.g_gp, h = in.h_vg;
  return (g - h) * (g + h) / (2.0 * (h * in.cos_theta + g));
}

double step_limit_uniform(const StepLimitInputs& in) {
  return std::min(gamma_uniform_raw(in), in.epsilon);
}

StepLimitRoots step_limit_roots(const StepLimitInputs& in) {
  check_inputs(in);
  if (!(in.c_vp > 1.0)) throw UsageError("step_limit_roots: requires C(v_p) > 1");
  const double g = in.g_gp, h = in.h_vg, cv = in.c_vp;
  const double a = (cv - 1.0) * (cv + 1.0);
  const double b = g * cv + h * in.cos_theta;  // positive because g > h and C >= 1
  const double constant = (g - h) * (g + h);
  // b^2 - a*constant rearranged into two non-negative terms; the direct form cancels near a double root.
  const double sin2 = (1.0 - in.cos_theta) * (1.0 + in.cos_theta);
  const double lead = g + cv * h * in.cos_theta;
  const double delta = lead * lead + a * h * h * sin2;
  const double root = std::sqrt(std::max(delta, 0.0));
  // Product of roots is constant / a; this form avoids cancellation in b - sqrt(delta).
  return StepLimitRoots{constant / (b + root), (b + root) / a, delta};
}

double step_limit_general(const StepLimitInputs& in) {
  check_inputs(in);
  if (in.c_vp == 1.0) return step_limit_uniform(in);
  const auto roots = step_limit_roots(in);
  if (roots.delta <= 0.0) return std::min(in.g_gp / in.c_vp, in.epsilon);
  return std::min(roots.gamma1, in.epsilon);
}

std::optional<RelevantSample> relevant_region_sample(PlannerGraph& graph, const Environment& env,
                                                     RelevantQueue& queue, double c,
                                                     RngStream& rng,
                                                     const RelevantSampleParams& params) {
  if (!std::isfinite(c)) return std::nullopt;
  if (!(params.epsilon > 0.0)) throw UsageError("relevant_region_sample: epsilon must be positive");
  const auto chosen = queue.choose(graph, env.goal, params.n_q, rng);
  if (!chosen) return std::nullopt;

  const VertexId v = *chosen;
  const StateVec& vertex = graph.state(v);
  const double g_vertex = graph.g(v);
  const double c_vertex = env.costmap.eval(vertex);
  const int d = graph.dim();

  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    const StateVec direction = sample_unit_direction(rng, d);
    const auto inputs =
        StepLimitInputs::from_geometry(vertex, g_vertex, c, env.goal, direction, c_vertex, params.epsilon);
    if (!(inputs.g_gp > inputs.h_vg)) return std::nullopt;  // relevance lost to rounding
    const double gamma_rel =
        c_vertex == 1.0 ? step_limit_uniform(inputs) : step_limit_general(inputs);
    const double gamma = radial_offset(rng, gamma_rel, d);
    StateVec x = vertex + gamma * direction;

    // Rounding can land exactly on the open set's boundary; such draws are redrawn.
    const double to_goal = (x - env.goal).norm();
    if (!env.bounds.contains(x)) continue;
    if (!(gamma * c_vertex + g_vertex + to_goal < c)) continue;
    if (!((x - env.start).norm() + to_goal < c)) continue;
    return RelevantSample{std::move(x), v, gamma_rel, gamma};
  }
  return std::nullopt;
}

TransitionState::TransitionState(double t_init_, double k_)
    : temperature(t_init_), t_init(t_init_), k(k_) {
  if (!(t_init_ > 0.0)) throw UsageError("TransitionState: initial temperature must be positive");
  if (!(k_ > 0.0)) throw UsageError("TransitionState: k must be positive");
}

void TransitionState::observe(double cost) {
  min_cost_seen = std::min(min_cost_seen, cost);
  max_cost_seen = std::max(max_cost_seen, cost);
  cost_range = max_cost_seen - min_cost_seen;
}

bool transition_test(TransitionState& ts, double c_from, double c_to, RngStream& rng) {
  const double dc = c_to - c_from;
  if (dc <= 0.0) return true;
  const double p = std::exp(-dc / (ts.k * ts.temperature));
  if (rng.uniform01() < p) {
    // With no observed spread yet, the move itself defines the range.
    const double range = ts.cost_range > 0.0 ? ts.cost_range : dc;
    ts.temperature = std::max(ts.temperature / std::exp2(dc / range), ts.min_temperature());
    ts.n_fail = 0;
    return true;
  }
  ts.temperature = std::min(2.0 * ts.temperature, ts.max_temperature());
  ++ts.n_fail;
  return false;
}

}  // namespace relreg
