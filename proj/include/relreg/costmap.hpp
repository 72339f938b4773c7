#pragma once

#include <string>
#include <variant>
#include <vector>

#include "relreg/core.hpp"

namespace relreg {

/// Row-major raster with values in [0, 1]; row 0 is the top of the image.
struct Grid2D {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Grid2D() = default;
  Grid2D(int w, int h, std::vector<double> v);

  double at(int col, int row) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

/// State cost function C: X -> [1, inf).
class CostMap {
public:
  enum class Kind { uniform, potential, terrain };

  struct Potential {
    std::vector<StateVec> centers;
    double amplitude = 9.0;
    double width = 5.0;
  };

  /// Planar raster extruded along every axis past the first two.
  struct Terrain {
    Grid2D raster;
    Bounds bounds;  // first two axes only
    double c_min = 1.0;
    double c_max = 10.0;
  };

  CostMap() = default;

  static CostMap uniform();
  static CostMap potential(std::vector<StateVec> centers, double amplitude = 9.0,
                           double width = 5.0);
  static CostMap terrain(Grid2D raster, Bounds bounds, double c_min = 1.0, double c_max = 10.0);

  Kind kind() const;
  std::string kind_name() const;
  bool is_uniform() const { return kind() == Kind::uniform; }

  const Potential* as_potential() const { return std::get_if<Potential>(&variant_); }
  const Terrain* as_terrain() const { return std::get_if<Terrain>(&variant_); }

  /// C(x). Terrain maps throw DomainError outside their planar bounds.
  double eval(const StateVec& x) const;

private:
  struct Uniform {};
  std::variant<Uniform, Potential, Terrain> variant_;
};

inline double eval_cost(const CostMap& cm, const StateVec& x) { return cm.eval(x); }

/// Straight-line integral of cost by the composite midpoint rule with n_seg segments.
double edge_cost(const CostMap& cm, const StateVec& a, const StateVec& b, int n_seg);

/// ceil(length / (step_size / 10)), at least 1.
int default_segments(double length, double step_size);

/// edge_cost with default_segments.
double edge_cost(const CostMap& cm, const StateVec& a, const StateVec& b, double step_size);

}  // namespace relreg
