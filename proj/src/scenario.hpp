#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "gains.hpp"
#include "kinematics.hpp"
#include "path_model.hpp"
#include "steering.hpp"

namespace tpf {

enum class NoiseKind { kNone, kUniform, kSinusoidal };

struct PerturbationSpec {
  NoiseKind kind = NoiseKind::kNone;
  double kappa_amp = 0.0;  // [1/m]
  double vx_amp = 0.0;     // [m/s]
  double frequency = 1.0;  // [Hz], sinusoidal kind only
};

struct InitialErrors {
  double e_p = 0.0;
  double e_q = 0.0;
  double xi = 0.0;
};

struct Scenario {
  double d = 0.0;
  SpeedProfile speed = SpeedProfile::constant(1.0);
  PathSpec path = PathSpec::constant(0.0, 0.0);
  GainSet gains;  // gains.d and gains.kappa_max mirror d and path.kappa_max()
  ControllerVariant variant = ControllerVariant::kSaturated;
  ReferenceState ref0;  // ref0.s == path.s0()
  std::optional<VehicleState> pose;
  std::optional<InitialErrors> errors;
  double initial_v = 0.0;  // steering curvature at t = 0 for error-style init
  double dt = 1e-3;
  double duration = 20.0;
  PerturbationSpec noise;
  std::uint64_t seed = 1;

  // Vehicle pose at t = 0; reconstructed from the errors when those are given.
  VehicleState initial_vehicle() const;
};

// Flat `key = value` store for scenario files. Keys are checked against the
// known set on every write; unknown keys are usage errors.
class ScenarioConfig {
 public:
  static ScenarioConfig parse(std::string_view text);
  static ScenarioConfig load(const std::string& path);

  // Last write wins.
  void set(const std::string& key, const std::string& value);
  // "key=value" form used by --override.
  void apply_override(std::string_view assignment);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  Scenario build() const;

 private:
  std::map<std::string, std::string> values_;
};

// Gain block only: gains.*, vehicle.d and path.kappa_max.
GainSet gains_from_config(const ScenarioConfig& cfg);

std::string_view to_string(ControllerVariant v);
ControllerVariant parse_variant(std::string_view s);

}  // namespace tpf
