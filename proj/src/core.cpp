#include "relreg/core.hpp"

#include <cmath>
#include <string>

#include "relreg/error.hpp"

namespace relreg {

Bounds::Bounds(StateVec lo, StateVec hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) throw UsageError("Bounds: dimension mismatch");
  if (lower.size() < 2) throw UsageError("Bounds: dimension must be at least 2");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i]))
      throw UsageError("Bounds: require finite lower[i] < upper[i] for axis " + std::to_string(i));
  }
}

bool Bounds::contains(const StateVec& x) const {
  if (x.size() != lower.size()) return false;
  return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

double Bounds::volume() const { return (upper - lower).prod(); }

double l2_heuristic(const StateVec& a, const StateVec& b) {
  if (a.size() != b.size())
    throw UsageError("l2_heuristic: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  return (b - a).norm();
}

StateVec sample_unit_direction(RngStream& rng, int dim) {
  if (dim < 2) throw UsageError("sample_unit_direction: dimension must be at least 2");
  StateVec e(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) e[i] = rng.normal();
    norm = e.norm();
  } while (norm < 1e-300);
  return e / norm;
}

double radial_offset_from_uniform(double u, double gamma_rel, int dim) {
  if (!(gamma_rel > 0.0)) throw UsageError("radial_offset: gamma_rel must be positive");
  if (dim < 1) throw UsageError("radial_offset: dimension must be positive");
  if (!(u > 0.0 && u <= 1.0)) throw UsageError("radial_offset: u must lie in (0, 1]");
  return std::pow(u, 1.0 / dim) * gamma_rel;
}

double radial_offset(RngStream& rng, double gamma_rel, int dim) {
  if (!(gamma_rel > 0.0)) throw UsageError("radial_offset: gamma_rel must be positive");
  return radial_offset_from_uniform(1.0 - rng.uniform01(), gamma_rel, dim);
}

StateVec sample_uniform(RngStream& rng, const Bounds& bounds) {
  StateVec x(bounds.dim());
  for (int i = 0; i < bounds.dim(); ++i) x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
  return x;
}

}  // namespace relreg
