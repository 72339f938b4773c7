// Independent reference computations shared by the unit and acceptance suites.
#pragma once

#include <cmath>
#include <limits>

#include "relreg/sampling.hpp"

namespace relreg::testing {

// Defining inequality of the relevant set along a ray with constant cost C(v_p):
//   F(gamma) = gamma*C + |x_pg + gamma*e| - g_gp < 0
inline double relevant_margin(const StepLimitInputs& in, double gamma) {
  // Plane spanned by x_pg and e: x_pg = (h, 0), e = (cos, sin).
  const double sin_theta = std::sqrt(std::max(0.0, (1.0 - in.cos_theta) * (1.0 + in.cos_theta)));
  return gamma * in.c_vp + std::hypot(in.h_vg + gamma * in.cos_theta, gamma * sin_theta) - in.g_gp;
}

// F is convex with F(0) < 0, so {F < 0} is an interval starting at 0; bisect its end.
inline double step_limit_bisection(const StepLimitInputs& in) {
  double lo = 0.0;
  double hi = in.g_gp / in.c_vp;  // F(hi) >= 0 always
  if (relevant_margin(in, hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (relevant_margin(in, mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return std::min(0.5 * (lo + hi), in.epsilon);
}

}  // namespace relreg::testing
