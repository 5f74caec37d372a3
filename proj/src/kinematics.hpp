#pragma once

#include "path_model.hpp"

namespace tpf {

// Vehicle pose plus the current steering curvature v, which is a state
// because its rate is the actual actuator command.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double v = 0.0;
};

struct TargetState {
  double p = 0.0;
  double q = 0.0;
  double theta = 0.0;
  double v_d = 0.0;  // speed of the target point
};

struct ErrorCoords {
  double e_p = 0.0;
  double e_q = 0.0;
  double xi = 0.0;
  double y1 = 0.0;  // along-track error in the reference frame
  double y2 = 0.0;  // cross-track error in the reference frame
};

// Time derivatives of (y1, y2, xi).
struct ErrorRates {
  double y1 = 0.0;
  double y2 = 0.0;
  double xi = 0.0;
};

enum class SpeedKind { kConstant, kSinusoidal };

// Measured forward speed V_x(t). Sinusoidal: base + amplitude*sin(2*pi*t/period).
class SpeedProfile {
 public:
  static SpeedProfile constant(double v);
  static SpeedProfile sinusoidal(double base, double amplitude, double period);

  double at(double t) const;
  SpeedKind kind() const { return kind_; }
  double base() const { return base_; }
  double amplitude() const { return amplitude_; }
  double period() const { return period_; }
  double v_min() const { return base_ - amplitude_; }
  double v_max() const { return base_ + amplitude_; }

 private:
  SpeedProfile() = default;
  SpeedKind kind_ = SpeedKind::kConstant;
  double base_ = 0.0;
  double amplitude_ = 0.0;
  double period_ = 1.0;
};

TargetState target_from_vehicle(const VehicleState& veh, double d, double vx);

struct TargetRates {
  double p = 0.0;
  double q = 0.0;
  double psi = 0.0;
};

// Rigid-link derivative of the target point for steering curvature v. Only
// the cross-check oracles use this; the main loop derives the target point.
TargetRates target_derivative(const VehicleState& veh, double d, double vx,
                              double v);

ErrorCoords error_coords(const TargetState& target, const ReferenceState& ref);

// Rotation of (e_p, e_q) by -psi_r.
void rotate_into_reference(ErrorCoords& err, double psi_r);

}  // namespace tpf
