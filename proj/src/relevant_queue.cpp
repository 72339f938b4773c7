#include "relreg/relevant_queue.hpp"

#include <algorithm>
#include <cmath>

#include "relreg/error.hpp"

namespace relreg {

double vertex_weight(const QueueWeights& w, std::int64_t selections, std::size_t degree,
                     double cost_through, double c) {
  return w.selections * static_cast<double>(selections) + w.degree * static_cast<double>(degree) +
         w.cost * cost_through / c;
}

double RelevantQueue::weight(const PlannerGraph& graph, VertexId v, const StateVec& goal) const {
  return vertex_weight(weights_, graph.selections(v), graph.degree(v),
                       graph.g(v) + l2_heuristic(graph.state(v), goal), bound_);
}

void RelevantQueue::touch(VertexId v) { dirty_.push_back(v); }

void RelevantQueue::push(const PlannerGraph& graph, VertexId v, const StateVec& goal) {
  if (version_.size() < graph.size()) version_.resize(graph.size(), 0);
  const std::uint32_t version = ++version_[v];
  if (!is_relevant(graph, v, bound_, goal)) return;
  heap_.push_back(Entry{weight(graph, v, goal), v, version});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

void RelevantQueue::update(const PlannerGraph& graph, double c, const StateVec& goal) {
  if (!std::isfinite(c)) throw UsageError("update_relevant_queue: bound must be finite");
  // Keys of untouched entries keep the bound they were computed with until it drifts by more
  // than kRekeyFraction; relevance itself is always checked against the current bound on pop.
  if (!std::isfinite(bound_) || c < keyed_bound_ * (1.0 - kRekeyFraction) ||
      heap_.size() > 4 * graph.size() + 64) {
    rebuild(graph, c, goal);
    return;
  }
  bound_ = c;
  std::sort(dirty_.begin(), dirty_.end());
  dirty_.erase(std::unique(dirty_.begin(), dirty_.end()), dirty_.end());
  for (VertexId v : dirty_) push(graph, v, goal);
  dirty_.clear();
}

void RelevantQueue::rebuild(const PlannerGraph& graph, double c, const StateVec& goal) {
  if (!std::isfinite(c)) throw UsageError("update_relevant_queue: bound must be finite");
  bound_ = c;
  keyed_bound_ = c;
  dirty_.clear();
  heap_.clear();
  version_.resize(graph.size(), 0);
  for (VertexId v = 0; v < graph.size(); ++v) {
    const std::uint32_t version = ++version_[v];
    if (is_relevant(graph, v, bound_, goal))
      heap_.push_back(Entry{weight(graph, v, goal), v, version});
  }
  std::make_heap(heap_.begin(), heap_.end(), Later{});
}

std::vector<RelevantQueue::Entry> RelevantQueue::pop_live(const PlannerGraph& graph,
                                                          const StateVec& goal, int n_q) {
  std::vector<Entry> live;
  while (!heap_.empty() && static_cast<int>(live.size()) < n_q) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    const Entry e = heap_.back();
    heap_.pop_back();
    if (e.id >= version_.size() || version_[e.id] != e.version) continue;
    // A vertex that is no longer relevant is dropped here; it comes back if touched.
    if (!is_relevant(graph, e.id, bound_, goal)) continue;
    live.push_back(e);
  }
  return live;
}

void RelevantQueue::restore(const std::vector<Entry>& entries) {
  for (const auto& e : entries) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), Later{});
  }
}

std::optional<VertexId> RelevantQueue::choose(PlannerGraph& graph, const StateVec& goal, int n_q,
                                              RngStream& rng) {
  if (n_q < 1) throw UsageError("choose_vertex: n_q must be at least 1");
  if (!std::isfinite(bound_)) return std::nullopt;
  auto live = pop_live(graph, goal, n_q);
  if (live.empty()) return std::nullopt;
  const std::size_t pick = rng.index(live.size());
  const VertexId chosen = live[pick].id;
  live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
  restore(live);
  graph.mark_selected(chosen);
  push(graph, chosen, goal);
  return chosen;
}

std::vector<VertexId> RelevantQueue::top(const PlannerGraph& graph, const StateVec& goal, int n_q) {
  auto live = pop_live(graph, goal, n_q);
  std::vector<VertexId> ids;
  for (const auto& e : live) ids.push_back(e.id);
  restore(live);
  return ids;
}

}  // namespace relreg
