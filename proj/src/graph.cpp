#include "relreg/graph.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <queue>

#include "relreg/error.hpp"

namespace relreg {

PlannerGraph::PlannerGraph(int dim) : dim_(dim), index_(dim) {
  if (dim < 2) throw UsageError("PlannerGraph: dimension must be at least 2");
}

VertexId PlannerGraph::add_root(const StateVec& x) {
  if (!empty()) throw UsageError("add_root: graph already has a root");
  if (x.size() != dim_) throw UsageError("add_root: dimension mismatch");
  vertices_.push_back(Vertex{x, 0, 0.0, 0, {}});
  index_.insert(x, 0);
  return 0;
}

std::optional<VertexId> PlannerGraph::insert_vertex(const StateVec& x, VertexId parent,
                                                    double edge_cost) {
  if (x.size() != dim_) throw UsageError("insert_vertex: dimension mismatch");
  if (parent >= size()) throw UsageError("insert_vertex: parent does not exist");
  if (!(edge_cost > 0.0)) throw UsageError("insert_vertex: edge cost must be positive");
  const VertexId closest = index_.nearest(x);
  if ((vertices_[closest].state - x).norm() <= kDuplicateTolerance) return std::nullopt;

  const auto id = static_cast<VertexId>(vertices_.size());
  vertices_.push_back(Vertex{x, parent, vertices_[parent].g + edge_cost, 0, {}});
  index_.insert(x, id);
  add_edge(parent, id, edge_cost);
  return id;
}

void PlannerGraph::add_edge(VertexId u, VertexId v, double cost) {
  if (u >= size() || v >= size()) throw UsageError("add_edge: vertex does not exist");
  if (u == v) throw UsageError("add_edge: self loops are not allowed");
  if (!(cost > 0.0)) throw UsageError("add_edge: edge cost must be positive");
  vertices_[u].edges.push_back(Edge{v, cost});
  vertices_[v].edges.push_back(Edge{u, cost});
  ++edge_count_;
}

bool PlannerGraph::has_edge(VertexId u, VertexId v) const { return edge_cost(u, v).has_value(); }

std::optional<double> PlannerGraph::edge_cost(VertexId u, VertexId v) const {
  for (const auto& e : vertices_.at(u).edges)
    if (e.to == v) return e.cost;
  return std::nullopt;
}

VertexId PlannerGraph::nearest(const StateVec& x) const {
  if (empty()) throw UsageError("nearest: graph is empty");
  return index_.nearest(x);
}

std::vector<VertexId> PlannerGraph::near(const StateVec& x, double r) const {
  if (!(r > 0.0)) throw UsageError("near: radius must be positive");
  return index_.radius(x, r);
}

std::vector<VertexId> PlannerGraph::rewire_global(std::span<const VertexId> seeds) {
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  std::vector<VertexId> changed;
  changed_stamp_.resize(size(), 0);
  if (++epoch_ == 0) {
    std::fill(changed_stamp_.begin(), changed_stamp_.end(), 0);
    epoch_ = 1;
  }
  auto note_change = [&](VertexId v) {
    if (changed_stamp_[v] != epoch_) {
      changed_stamp_[v] = epoch_;
      changed.push_back(v);
    }
  };

  for (VertexId s : seeds) {
    if (s >= size()) throw UsageError("rewire_global: seed does not exist");
    Vertex& v = vertices_[s];
    if (s != 0) {
      for (const auto& e : v.edges) {
        const double through = vertices_[e.to].g + e.cost;
        if (through < v.g) {
          v.g = through;
          v.parent = e.to;
          note_change(s);
        }
      }
    }
    if (v.g < kInfinity) open.emplace(v.g, s);
  }

  while (!open.empty()) {
    const auto [key, u] = open.top();
    open.pop();
    if (key > vertices_[u].g) continue;  // stale entry
    const double gu = vertices_[u].g;
    for (const auto& e : vertices_[u].edges) {
      Vertex& w = vertices_[e.to];
      if (e.to == 0) continue;
      const double through = gu + e.cost;
      if (through < w.g) {
        note_change(e.to);
        w.g = through;
        w.parent = u;
        open.emplace(through, e.to);
      }
    }
  }
  return changed;
}

std::vector<VertexId> PlannerGraph::path_to(VertexId v) const {
  std::vector<VertexId> path;
  if (v >= size()) throw UsageError("path_to: vertex does not exist");
  for (std::size_t steps = 0; steps <= size(); ++steps) {
    path.push_back(v);
    if (v == 0) {
      std::reverse(path.begin(), path.end());
      return path;
    }
    v = vertices_[v].parent;
  }
  throw std::logic_error("path_to: parent pointers contain a cycle");
}

void PlannerGraph::dump(std::ostream& out) const {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (VertexId id = 0; id < size(); ++id) {
    const auto& v = vertices_[id];
    out << id << ' ' << v.parent << ' ' << v.g;
    for (int i = 0; i < dim_; ++i) out << ' ' << v.state[i];
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

bool is_relevant(const PlannerGraph& graph, VertexId v, double c, const StateVec& goal) {
  return graph.g(v) + l2_heuristic(graph.state(v), goal) < c;
}

}  // namespace relreg
