#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gains.hpp"
#include "kinematics.hpp"
#include "steering.hpp"
#include "trajectory_log.hpp"

namespace tpf {

// F(xi) = integral_0^xi sin(s)/s ds. Served from a cubic Hermite table on
// [-2, 2]; falls back to quadrature outside it.
double sine_integral(double xi);

// Adaptive Gauss-Kronrod quadrature, absolute tolerance about 1e-12.
double sine_integral_quadrature(double xi);

// V = (y1^2 + y2^2)/2 + F(xi) y2 / C0 + N xi^2 / (2 C0).
// Rejects N <= 1/C0, where V is not positive definite.
double lyapunov_value(const ErrorCoords& err, const GainSet& g);

// Same expression without the positivity precondition.
double lyapunov_formula(double y1, double y2, double xi, const GainSet& g);

// dV/dt by the chain rule, in whatever time the rates are expressed in.
double lyapunov_rate(const ErrorCoords& err, const ErrorRates& rates,
                     const GainSet& g);

// Lower bound on the y1 bracket of -dV/dt. Requires |xi| < 2 rho.
double a_bound(double y1, double xi, const GainSet& g);

// Lower bound on the y2 bracket of -dV/dt. Requires |xi| < 2 rho.
double b_bound(double y2, double xi, const GainSet& g);

// Quadratic form D(z, xi) as usually stated for the positivity argument on B.
// Its xi^2 coefficient is twice the one B actually carries, so positive
// definiteness of D (Cond5) does not imply B >= 0.
double d_form(double z, double xi, const GainSet& g);

// The form that does bound B: D with the xi^2 coefficient halved. Positive
// definite iff the B certificate holds.
double b_quadratic_form(double z, double xi, const GainSet& g);

// B = rho (1 - 2rho^2/3)(y2 - sat(C2 y2)/C2) sat(C2 y2)
//     + (rho/C2) b_quadratic_form(sat(C2 y2), xi), exactly.
struct BDecomposition {
  double saturation_part = 0.0;  // >= 0
  double form_part = 0.0;        // (rho/C2) * form_value
  double form_value = 0.0;
};
BDecomposition b_decomposition(double y2, double xi, const GainSet& g);

struct GridOptions {
  int points = 401;        // per axis, odd so that 0 is on the grid
  double y_extent = 10.0;  // y in [-extent, extent]
  double zero_tol = 1e-12;
};

struct GridResult {
  double a_min = 0.0;
  double b_min = 0.0;
  double a_min_y = 0.0, a_min_xi = 0.0;
  double b_min_y = 0.0, b_min_xi = 0.0;
  std::size_t a_negative = 0;
  std::size_t b_negative = 0;
  std::size_t a_zero_off_origin = 0;  // |A| <= tol away from the origin
  std::size_t b_zero_off_origin = 0;
  double a_origin = 0.0;
  double b_origin = 0.0;
  int points = 0;
  double xi_max = 0.0;  // largest |xi| on the grid, < 2 rho

  bool passed() const;
  std::string text() const;
};

// Sweeps A and B over [-extent, extent] x ]-2 rho, 2 rho[.
GridResult positivity_grid(const GainSet& g, const GridOptions& opt = {});

struct VdotOptions {
  std::size_t t0_window = 10;   // consecutive steps with |xi| < 2 rho
  double decrease_tol = 1e-9;   // on Vdot <= -A - B
  double monotone_tol = 0.0;    // on V[k+1] <= V[k]
  double gap_factor = 10.0;     // FD gap bound = gap_factor * dt^2
};

struct VdotViolation {
  std::size_t index = 0;
  double t = 0.0;
  std::string what;
  double y1 = 0.0, y2 = 0.0, xi = 0.0, V = 0.0, Vdot = 0.0;
};

struct VdotReport {
  bool t0_found = false;
  std::size_t t0_index = 0;
  double t0 = 0.0;
  std::size_t post_t0_steps = 0;
  std::size_t trapping_violations = 0;
  std::size_t saturation_active = 0;  // post-t0 steps with |u2 arg| > 1
  std::size_t monotone_violations = 0;
  double max_increase = 0.0;
  std::size_t decrease_violations = 0;
  double max_decrease_excess = 0.0;  // max of Vdot + A + B
  double v_t0 = 0.0;
  double v_end = 0.0;
  std::size_t smooth_points = 0;
  double max_fd_gap = 0.0;
  double max_fd_gap_t = 0.0;
  double gap_bound = 0.0;
  std::vector<VdotViolation> violations;  // first few, for diagnostics

  // t0 found, trapping holds, V non-increasing and Vdot <= -A - B + tol.
  bool decrease_verified() const;
  bool fd_gap_within_bound() const { return max_fd_gap <= gap_bound; }
  std::string text() const;
};

// Post-hoc check of a logged trajectory. The finite-difference comparison
// only uses steps whose 5-point neighbourhood stays in one saturation regime.
VdotReport vdot_check(const TrajectoryLog& log, const GainSet& g,
                      ControllerVariant variant, const VdotOptions& opt = {});

}  // namespace tpf
