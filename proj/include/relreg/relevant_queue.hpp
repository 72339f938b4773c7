#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relreg/graph.hpp"
#include "relreg/rng.hpp"

namespace relreg {

/// Coefficients of the expansion weight
///   q_v = selections * p_v + degree * d_v + cost * (g(v) + h(v, goal)) / c.
struct QueueWeights {
  double selections = 10.0;
  double degree = 5.0;
  double cost = 100.0;
};

double vertex_weight(const QueueWeights& w, std::int64_t selections, std::size_t degree,
                     double cost_through, double c);

/// Min-heap over the relevant vertices keyed by q_v, with lazy deletion.
///
/// Each vertex carries a version; an entry is live only while its version is
/// current. Vertices whose weight inputs changed are touched and re-pushed on
/// the next update(). Keys are recomputed in full once c has dropped by more
/// than kRekeyFraction since the last rebuild, or when stale entries pile up.
/// Relevance is re-checked against the current c whenever an entry is popped.
class RelevantQueue {
public:
  static constexpr double kRekeyFraction = 0.01;

  explicit RelevantQueue(QueueWeights weights = {}) : weights_(weights) {}

  const QueueWeights& weights() const { return weights_; }
  double bound() const { return bound_; }
  /// Heap entries including stale ones.
  std::size_t raw_size() const { return heap_.size(); }

  double weight(const PlannerGraph& graph, VertexId v, const StateVec& goal) const;

  void touch(VertexId v);

  /// Brings keys in line with the graph for bound c (finite).
  void update(const PlannerGraph& graph, double c, const StateVec& goal);

  /// Drops every entry and re-pushes all relevant vertices.
  void rebuild(const PlannerGraph& graph, double c, const StateVec& goal);

  /// Pops up to n_q live relevant entries in key order, picks one uniformly,
  /// increments its selection count, and returns the others to the heap.
  /// nullopt when no relevant vertex remains.
  std::optional<VertexId> choose(PlannerGraph& graph, const StateVec& goal, int n_q,
                                 RngStream& rng);

  /// Same pop order as choose() without selecting; for inspection and tests.
  std::vector<VertexId> top(const PlannerGraph& graph, const StateVec& goal, int n_q);

private:
  struct Entry {
    double key;
    VertexId id;
    std::uint32_t version;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.key > b.key || (a.key == b.key && a.id > b.id);
    }
  };

  void push(const PlannerGraph& graph, VertexId v, const StateVec& goal);
  std::vector<Entry> pop_live(const PlannerGraph& graph, const StateVec& goal, int n_q);
  void restore(const std::vector<Entry>& entries);

  QueueWeights weights_;
  double bound_ = kInfinity;
  double keyed_bound_ = kInfinity;  // bound used for the last full re-key
  std::vector<Entry> heap_;
  std::vector<std::uint32_t> version_;
  std::vector<VertexId> dirty_;
};

}  // namespace relreg
