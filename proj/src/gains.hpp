#pragma once

namespace tpf {

// Controller constants plus the geometry they were tuned for.
struct GainSet {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double m = 0.0;
  double n = 0.0;
  double beta = 0.0;
  double rho = 0.0;
  double d = 0.0;          // target-point distance [m]
  double kappa_max = 0.0;  // path curvature bound [1/m]
};

// Steering budget (1 - d*kappa_max)/d on |u1|/d + |u2|.
inline double steering_budget(double d, double kappa_max) {
  return (1.0 - d * kappa_max) / d;
}

}  // namespace tpf
