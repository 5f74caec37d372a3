#include "path_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace tpf {
namespace {

void check_bound(double kappa_max) {
  if (!(kappa_max >= 0.0) || !std::isfinite(kappa_max)) {
    fail_validation("path.kappa_max must be finite and >= 0");
  }
}

}  // namespace

PathSpec PathSpec::constant(double kappa, double kappa_max, double s0) {
  check_bound(kappa_max);
  if (!std::isfinite(kappa) || std::abs(kappa) > kappa_max) {
    fail_validation("constant curvature exceeds path.kappa_max");
  }
  PathSpec p;
  p.kind_ = PathKind::kConstant;
  p.amplitude_ = kappa;
  p.kappa_max_ = kappa_max;
  p.s0_ = s0;
  return p;
}

PathSpec PathSpec::piecewise_linear(std::vector<CurvatureSample> samples,
                                    double kappa_max, double s0) {
  check_bound(kappa_max);
  if (samples.empty()) fail_validation("path.samples is empty");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& c = samples[i];
    if (!std::isfinite(c.s) || !std::isfinite(c.kappa)) {
      fail_validation("path.samples contains a non-finite value");
    }
    if (std::abs(c.kappa) > kappa_max) {
      fail_validation("path.samples: |kappa| at s=" + std::to_string(c.s) +
                      " exceeds path.kappa_max");
    }
    if (i > 0 && !(c.s > samples[i - 1].s)) {
      fail_validation("path.samples must be strictly increasing in s");
    }
  }
  PathSpec p;
  p.kind_ = PathKind::kPiecewiseLinear;
  p.samples_ = std::move(samples);
  p.kappa_max_ = kappa_max;
  p.s0_ = s0;
  return p;
}

PathSpec PathSpec::sinusoidal(double amplitude, double period, double kappa_max,
                              double s0) {
  check_bound(kappa_max);
  if (!(period > 0.0)) fail_validation("path.period must be > 0");
  if (!std::isfinite(amplitude) || std::abs(amplitude) > kappa_max) {
    fail_validation("path.amplitude exceeds path.kappa_max");
  }
  PathSpec p;
  p.kind_ = PathKind::kSinusoidal;
  p.amplitude_ = amplitude;
  p.period_ = period;
  p.kappa_max_ = kappa_max;
  p.s0_ = s0;
  return p;
}

double PathSpec::curvature_at(double s) const {
  switch (kind_) {
    case PathKind::kConstant:
      return amplitude_;
    case PathKind::kSinusoidal:
      return amplitude_ * std::sin(2.0 * std::numbers::pi * s / period_);
    case PathKind::kPiecewiseLinear: {
      if (s <= samples_.front().s) return samples_.front().kappa;
      if (s >= samples_.back().s) return samples_.back().kappa;
      auto hi = std::upper_bound(
          samples_.begin(), samples_.end(), s,
          [](double v, const CurvatureSample& c) { return v < c.s; });
      auto lo = hi - 1;
      const double w = (s - lo->s) / (hi->s - lo->s);
      return lo->kappa + w * (hi->kappa - lo->kappa);
    }
  }
  return 0.0;
}

ReferenceState reference_derivative(const ReferenceState& ref, double u,
                                    double kappa) {
  if (!(u > 0.0)) {
    fail_validation("reference forward speed u must be strictly positive");
  }
  return {u * std::cos(ref.psi_r), u * std::sin(ref.psi_r), u * kappa, u};
}

ReferenceState reference_derivative(const ReferenceState& ref, double u,
                                    const PathSpec& path) {
  return reference_derivative(ref, u, path.curvature_at(ref.s));
}

}  // namespace tpf
