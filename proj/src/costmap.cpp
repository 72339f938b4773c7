#include "relreg/costmap.hpp"

#include <algorithm>
#include <cmath>

#include "relreg/error.hpp"

namespace relreg {

Grid2D::Grid2D(int w, int h, std::vector<double> v) : width(w), height(h), values(std::move(v)) {
  if (w < 2 || h < 2) throw UsageError("Grid2D: raster must be at least 2x2");
  if (values.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
    throw UsageError("Grid2D: value count does not match width*height");
  for (double value : values)
    if (!std::isfinite(value) || value < 0.0 || value > 1.0)
      throw UsageError("Grid2D: values must be finite and within [0, 1]");
}

CostMap CostMap::uniform() { return CostMap{}; }

CostMap CostMap::potential(std::vector<StateVec> centers, double amplitude, double width) {
  if (centers.empty()) throw UsageError("potential cost map needs at least one center");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw UsageError("potential cost map amplitude must be finite and non-negative");
  if (!(width > 0.0)) throw UsageError("potential cost map width must be positive");
  for (const auto& c : centers)
    if (c.size() != centers.front().size())
      throw UsageError("potential cost map centers differ in dimension");
  CostMap cm;
  cm.variant_ = Potential{std::move(centers), amplitude, width};
  return cm;
}

CostMap CostMap::terrain(Grid2D raster, Bounds bounds, double c_min, double c_max) {
  if (bounds.dim() != 2) throw UsageError("terrain bounds must be two-dimensional");
  if (!(c_min >= 1.0)) throw UsageError("terrain c_min must be at least 1");
  if (!(c_max >= c_min) || !std::isfinite(c_max))
    throw UsageError("terrain c_max must be finite and at least c_min");
  if (raster.width < 2 || raster.height < 2) throw UsageError("terrain raster is empty");
  CostMap cm;
  cm.variant_ = Terrain{std::move(raster), std::move(bounds), c_min, c_max};
  return cm;
}

CostMap::Kind CostMap::kind() const {
  switch (variant_.index()) {
    case 1: return Kind::potential;
    case 2: return Kind::terrain;
    default: return Kind::uniform;
  }
}

std::string CostMap::kind_name() const {
  switch (kind()) {
    case Kind::potential: return "potential";
    case Kind::terrain: return "terrain";
    default: return "uniform";
  }
}

namespace {

double bilinear(const Grid2D& g, double col, double row) {
  const int c0 = std::clamp(static_cast<int>(std::floor(col)), 0, g.width - 2);
  const int r0 = std::clamp(static_cast<int>(std::floor(row)), 0, g.height - 2);
  const double fc = col - c0;
  const double fr = row - r0;
  const double top = (1.0 - fc) * g.at(c0, r0) + fc * g.at(c0 + 1, r0);
  const double bottom = (1.0 - fc) * g.at(c0, r0 + 1) + fc * g.at(c0 + 1, r0 + 1);
  return (1.0 - fr) * top + fr * bottom;
}

}  // namespace

double CostMap::eval(const StateVec& x) const {
  if (const auto* p = as_potential()) {
    double sum = 0.0;
    for (const auto& c : p->centers) {
      if (c.size() != x.size()) throw UsageError("potential cost map: dimension mismatch");
      double d2 = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) d2 += (c[i] - x[i]) * (c[i] - x[i]);
      sum += std::exp(-d2 / p->width);
    }
    return 1.0 + p->amplitude * sum;
  }
  if (const auto* t = as_terrain()) {
    if (x.size() < 2) throw UsageError("terrain cost map: state needs at least two axes");
    const auto& b = t->bounds;
    if (!(x[0] >= b.lower[0] && x[0] <= b.upper[0] && x[1] >= b.lower[1] && x[1] <= b.upper[1]))
      throw DomainError("terrain cost map: state outside raster bounds");
    const double col = (x[0] - b.lower[0]) / (b.upper[0] - b.lower[0]) * (t->raster.width - 1);
    const double row = (b.upper[1] - x[1]) / (b.upper[1] - b.lower[1]) * (t->raster.height - 1);
    return t->c_min + (t->c_max - t->c_min) * bilinear(t->raster, col, row);
  }
  return 1.0;
}

double edge_cost(const CostMap& cm, const StateVec& a, const StateVec& b, int n_seg) {
  if (n_seg < 1) throw UsageError("edge_cost: n_seg must be at least 1");
  const double length = l2_heuristic(a, b);
  if (cm.is_uniform()) return length;
  const StateVec delta = b - a;
  StateVec x(a.size());
  double sum = 0.0;
  for (int i = 0; i < n_seg; ++i) {
    x.noalias() = a + ((i + 0.5) / n_seg) * delta;
    sum += cm.eval(x);
  }
  return length * sum / n_seg;
}

int default_segments(double length, double step_size) {
  if (!(step_size > 0.0)) throw UsageError("default_segments: step size must be positive");
  return std::max(1, static_cast<int>(std::ceil(length / (step_size / 10.0))));
}

double edge_cost(const CostMap& cm, const StateVec& a, const StateVec& b, double step_size) {
  return edge_cost(cm, a, b, default_segments(l2_heuristic(a, b), step_size));
}

}  // namespace relreg
