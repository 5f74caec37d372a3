#include "steering.hpp"

#include <cmath>

#include "compare.hpp"
#include "errors.hpp"

namespace tpf {

double u2_saturation_argument(double xi, double y2, const GainSet& g) {
  return g.c0 / g.beta * (xi + g.rho * saturate(g.c2 * y2));
}

Feedback feedback(const ErrorCoords& err, const GainSet& g,
                  ControllerVariant variant) {
  Feedback f;
  f.u1 = g.c1 * saturate(g.m * err.y1);
  const double inner = err.xi + g.rho * saturate(g.c2 * err.y2);
  if (variant == ControllerVariant::kSaturated) {
    f.u2 = g.beta * saturate(-g.c0 / g.beta * inner);
  } else {
    f.u2 = -g.c0 * inner;
  }
  return f;
}

bool lemma1_guard(double u1, double u2, double d, double kappa_max) {
  if (!(d > 0.0)) fail_validation("target distance d must be > 0");
  if (!(d * kappa_max < 1.0)) {
    fail_validation("hypothesis d*kappa_max < 1 is violated");
  }
  return less_equal_with_margin(std::abs(u1) / d + std::abs(u2),
                                steering_budget(d, kappa_max));
}

double curvature_ode_rhs(double v, double omega, double d, double vx) {
  if (!(d > 0.0)) fail_validation("target distance d must be > 0");
  if (!(vx > 0.0)) fail_validation("forward speed V_x must be > 0");
  const double k = 1.0 + (v * d) * (v * d);
  return k / d * vx * (std::sqrt(k) * omega - v);
}

}  // namespace tpf
