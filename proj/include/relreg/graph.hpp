#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "relreg/core.hpp"
#include "relreg/kdtree.hpp"

namespace relreg {

using VertexId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Edge {
  VertexId to;
  double cost;
};

struct Vertex {
  StateVec state;
  VertexId parent;
  double g = kInfinity;      // cost-to-come along the spanning tree
  std::int64_t selections = 0;  // times chosen for relevant-region expansion
  std::vector<Edge> edges;   // undirected adjacency with cached edge costs

  std::size_t degree() const { return edges.size(); }
};

/// Undirected graph with an embedded shortest-path spanning tree rooted at
/// vertex 0, plus a nearest-neighbour index over the vertex states.
class PlannerGraph {
public:
  /// States closer than this to an existing vertex are rejected as duplicates.
  static constexpr double kDuplicateTolerance = 1e-12;

  explicit PlannerGraph(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Creates the root (parent = itself, g = 0). Only valid on an empty graph.
  VertexId add_root(const StateVec& x);

  /// New vertex hanging off `parent`, g = g(parent) + edge_cost. Returns
  /// nullopt when x duplicates an existing state.
  std::optional<VertexId> insert_vertex(const StateVec& x, VertexId parent, double edge_cost);

  /// Adds an undirected edge; does not touch cost-to-come values.
  void add_edge(VertexId u, VertexId v, double cost);
  bool has_edge(VertexId u, VertexId v) const;

  VertexId nearest(const StateVec& x) const;
  std::vector<VertexId> near(const StateVec& x, double r) const;

  /// Label-correcting pass seeded with vertices whose best incoming edge may
  /// have improved. Afterwards every g is the exact shortest-path cost over the
  /// current edge set and parents realize those paths. Returns the vertices
  /// whose g changed, in the order they were settled.
  std::vector<VertexId> rewire_global(std::span<const VertexId> seeds);

  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const StateVec& state(VertexId v) const { return vertices_.at(v).state; }
  double g(VertexId v) const { return vertices_.at(v).g; }
  VertexId parent(VertexId v) const { return vertices_.at(v).parent; }
  std::size_t degree(VertexId v) const { return vertices_.at(v).degree(); }
  std::int64_t selections(VertexId v) const { return vertices_.at(v).selections; }
  void mark_selected(VertexId v) { ++vertices_.at(v).selections; }

  /// Cached cost of edge (u, v), or nullopt.
  std::optional<double> edge_cost(VertexId u, VertexId v) const;

  /// Root-to-v vertex sequence along parent pointers.
  std::vector<VertexId> path_to(VertexId v) const;

  /// Debug dump: one vertex per line, `id parent g x[0] .. x[d-1]`.
  void dump(std::ostream& out) const;

private:
  int dim_;
  std::vector<Vertex> vertices_;
  KdTree index_;
  std::size_t edge_count_ = 0;
  std::vector<std::uint32_t> changed_stamp_;
  std::uint32_t epoch_ = 0;
};

/// g(v) + h(v, goal) < c.
bool is_relevant(const PlannerGraph& graph, VertexId v, double c, const StateVec& goal);

}  // namespace relreg
