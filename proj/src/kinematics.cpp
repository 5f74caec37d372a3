#include "kinematics.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace tpf {
namespace {

void check_geometry(double d, double vx) {
  if (!(d > 0.0)) fail_validation("target distance d must be > 0");
  if (!(vx > 0.0)) fail_validation("forward speed V_x must be > 0");
}

}  // namespace

SpeedProfile SpeedProfile::constant(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) fail_validation("speed.v must be > 0");
  SpeedProfile s;
  s.base_ = v;
  return s;
}

SpeedProfile SpeedProfile::sinusoidal(double base, double amplitude,
                                      double period) {
  if (!(base > 0.0) || !std::isfinite(base)) {
    fail_validation("speed.v must be > 0");
  }
  if (!(amplitude >= 0.0) || !(amplitude < base)) {
    fail_validation("speed.amplitude must satisfy 0 <= amplitude < speed.v");
  }
  if (!(period > 0.0)) fail_validation("speed.period must be > 0");
  SpeedProfile s;
  s.kind_ = SpeedKind::kSinusoidal;
  s.base_ = base;
  s.amplitude_ = amplitude;
  s.period_ = period;
  return s;
}

double SpeedProfile::at(double t) const {
  if (kind_ == SpeedKind::kConstant) return base_;
  return base_ + amplitude_ * std::sin(2.0 * std::numbers::pi * t / period_);
}

TargetState target_from_vehicle(const VehicleState& veh, double d, double vx) {
  check_geometry(d, vx);
  const double dv = d * veh.v;
  return {veh.x + d * std::cos(veh.psi), veh.y + d * std::sin(veh.psi),
          veh.psi + std::atan(dv), vx * std::sqrt(1.0 + dv * dv)};
}

TargetRates target_derivative(const VehicleState& veh, double d, double vx,
                              double v) {
  check_geometry(d, vx);
  const double c = std::cos(veh.psi);
  const double s = std::sin(veh.psi);
  return {vx * c - d * vx * v * s, vx * s + d * vx * v * c, vx * v};
}

void rotate_into_reference(ErrorCoords& err, double psi_r) {
  const double c = std::cos(psi_r);
  const double s = std::sin(psi_r);
  err.y1 = err.e_p * c + err.e_q * s;
  err.y2 = -err.e_p * s + err.e_q * c;
}

ErrorCoords error_coords(const TargetState& target, const ReferenceState& ref) {
  ErrorCoords err;
  err.e_p = target.p - ref.p_r;
  err.e_q = target.q - ref.q_r;
  err.xi = target.theta - ref.psi_r;
  rotate_into_reference(err, ref.psi_r);
  return err;
}

}  // namespace tpf
