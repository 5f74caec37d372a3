#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "closed_loop.hpp"
#include "gain_synthesis.hpp"
#include "scenario.hpp"
#include "trajectory_log.hpp"

namespace tpf {

// Deterministic bounded measurement noise. Uniform draws come straight from
// the 64-bit Mersenne Twister so the sequence is identical across standard
// libraries.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : rng_(seed) {}

  // Offsets on (kappa, V_x) for the step starting at time t.
  PerturbationSample next(const PerturbationSpec& spec, double t);

 private:
  double symmetric_unit();  // in [-1, 1)
  std::mt19937_64 rng_;
};

struct Measurement {
  double kappa = 0.0;
  double vx = 0.0;
};

// Values the controller sees; the plant keeps the true ones.
Measurement perturb(double kappa, double vx, const PerturbationSpec& spec,
                    double t, NoiseSource& source);

struct RunSummary {
  std::size_t steps = 0;
  std::optional<double> t_conv;  // |(e_p,e_q)| < 0.5 m and |xi| < 0.05 rad from here on
  std::optional<double> t0;      // first time |xi| < 2 rho holds for 10 steps
  double max_abs_d_omega = 0.0;
  double max_abs_v = 0.0;
  double min_v_d = 0.0;
  bool guard_enforced = false;  // saturated law with Cond0-compliant gains
  std::size_t guard_violations = 0;
  std::size_t omega_warnings = 0;  // |d omega| > 1 under the unsaturated law
  bool aborted = false;
  std::string abort_message;
};

struct RunResult {
  TrajectoryLog log;
  RunSummary summary;
  ConditionReport gain_report;
};

inline constexpr double kConvergedPosition = 0.5;  // [m]
inline constexpr double kConvergedHeading = 0.05;  // [rad]
inline constexpr std::size_t kTrappingWindow = 10;

WorldState initial_world(const Scenario& sc);

// One classical fourth-order step of the closed loop from time t. The noise
// sample is held over the step.
WorldState step(const WorldState& world, const Scenario& sc, double t,
                const PerturbationSample& noise = {});

// Integrates the scenario over its whole duration. Numerical failures do not
// throw: the summary is marked aborted and the log stops at the last good row.
RunResult run(const Scenario& sc);

std::string summary_text(const RunResult& r);

}  // namespace tpf
