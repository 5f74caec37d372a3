#pragma once

#include "gains.hpp"
#include "kinematics.hpp"

namespace tpf {

enum class ControllerVariant {
  kSaturated,  // u2 bounded by beta
  kRemark3,    // u2 = -C0 [xi + rho sat(C2 y2)], unbounded
};

struct ControlSample {
  double u1 = 0.0;
  double u2 = 0.0;
  double u = 0.0;      // reference forward speed
  double omega = 0.0;  // target-point curvature command
  double vdot = 0.0;   // steering-curvature rate
};

// Unit saturation x / max(1, |x|).
constexpr double saturate(double x) {
  if (x > 1.0) return 1.0;
  if (x < -1.0) return -1.0;
  return x;
}

struct Feedback {
  double u1 = 0.0;
  double u2 = 0.0;
};

Feedback feedback(const ErrorCoords& err, const GainSet& g,
                  ControllerVariant variant);

// Argument of the u2 saturation, C0/beta [xi + rho sat(C2 y2)]. |arg| <= 1
// means the saturated and unsaturated laws coincide.
double u2_saturation_argument(double xi, double y2, const GainSet& g);

// |u1|/d + |u2| <= (1 - d kappa_max)/d. Rejects d*kappa_max >= 1.
bool lemma1_guard(double u1, double u2, double d, double kappa_max);

// Steering-curvature dynamics that realise a commanded target curvature omega.
double curvature_ode_rhs(double v, double omega, double d, double vx);

// Curvature command from (u1, u2): omega = kappa_r (1 + u1) + u2.
inline double omega_command(double kappa_r, double u1, double u2) {
  return kappa_r * (1.0 + u1) + u2;
}

}  // namespace tpf
