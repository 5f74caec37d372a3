#pragma once

#include <vector>

namespace tpf {

enum class PathKind { kConstant, kPiecewiseLinear, kSinusoidal };

struct CurvatureSample {
  double s;      // arclength [m]
  double kappa;  // curvature [1/m]
};

// Followed path, described by its signed geodesic curvature as a function of
// arclength. Immutable after construction.
class PathSpec {
 public:
  static PathSpec constant(double kappa, double kappa_max, double s0 = 0.0);
  // Samples must be strictly increasing in s.
  static PathSpec piecewise_linear(std::vector<CurvatureSample> samples,
                                   double kappa_max, double s0 = 0.0);
  // kappa(s) = amplitude * sin(2*pi*s/period)
  static PathSpec sinusoidal(double amplitude, double period, double kappa_max,
                             double s0 = 0.0);

  PathKind kind() const { return kind_; }
  double kappa_max() const { return kappa_max_; }
  double s0() const { return s0_; }
  double amplitude() const { return amplitude_; }
  double period() const { return period_; }
  const std::vector<CurvatureSample>& samples() const { return samples_; }

  // Outside the sampled range the boundary value is held.
  double curvature_at(double s) const;

 private:
  PathSpec() = default;

  PathKind kind_ = PathKind::kConstant;
  double kappa_max_ = 0.0;
  double s0_ = 0.0;
  double amplitude_ = 0.0;
  double period_ = 0.0;
  std::vector<CurvatureSample> samples_;
};

// Reference unicycle moving along the path. psi_r is kept unwrapped.
struct ReferenceState {
  double p_r = 0.0;
  double q_r = 0.0;
  double psi_r = 0.0;
  double s = 0.0;
};

// Time derivative of the reference state for forward speed u > 0.
ReferenceState reference_derivative(const ReferenceState& ref, double u,
                                    const PathSpec& path);

// Same, with the curvature supplied directly (already evaluated at ref.s).
ReferenceState reference_derivative(const ReferenceState& ref, double u,
                                    double kappa);

}  // namespace tpf
