#pragma once

#include <array>

#include "gains.hpp"
#include "kinematics.hpp"
#include "path_model.hpp"
#include "steering.hpp"

namespace tpf {

// The eight integrated states. The target point is always derived.
struct WorldState {
  ReferenceState ref;
  VehicleState veh;

  static constexpr std::size_t kSize = 8;
  std::array<double, kSize> to_array() const;
  static WorldState from_array(const std::array<double, kSize>& a);
};

// Additive offsets on what the controller measures. The plant and the
// reference geometry always see the true values.
struct PerturbationSample {
  double kappa = 0.0;
  double vx = 0.0;
};

struct LoopInputs {
  const GainSet& gains;
  const PathSpec& path;
  ControllerVariant variant = ControllerVariant::kSaturated;
  double vx = 0.0;  // true forward speed at the evaluation time
  PerturbationSample noise{};
};

struct LoopEvaluation {
  WorldState rate;
  TargetState target;  // true target point (true V_x in v_d)
  ErrorCoords err;
  ControlSample control;
  double kappa_r = 0.0;       // true path curvature at s
  double vd_measured = 0.0;   // v_d as computed by the controller
};

LoopEvaluation closed_loop_rhs(const WorldState& world, const LoopInputs& in);

// Chain-rule rates of (y1, y2, xi) along the closed loop.
ErrorRates error_rates(const WorldState& world, const LoopEvaluation& ev,
                       double d);

}  // namespace tpf
