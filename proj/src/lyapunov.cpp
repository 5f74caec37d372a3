#include "lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/sinc.hpp>

#include "errors.hpp"
#include "numfmt.hpp"

namespace tpf {
namespace {

constexpr double kTableHalfWidth = 2.0;
constexpr int kTableIntervals = 4096;  // spacing 2^-10

using HermiteTable =
    boost::math::interpolators::cardinal_cubic_hermite<std::vector<double>>;

const HermiteTable& sine_integral_table() {
  static const HermiteTable table = [] {
    const double h = 2.0 * kTableHalfWidth / kTableIntervals;
    std::vector<double> y(kTableIntervals + 1);
    std::vector<double> dy(kTableIntervals + 1);
    auto f = [](double s) { return boost::math::sinc_pi(s); };
    const int mid = kTableIntervals / 2;
    y[mid] = 0.0;
    for (int i = mid + 1; i <= kTableIntervals; ++i) {
      const double a = -kTableHalfWidth + (i - 1) * h;
      y[i] = y[i - 1] +
             boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                 f, a, a + h, 0);
      y[2 * mid - i] = -y[i];
    }
    for (int i = 0; i <= kTableIntervals; ++i) {
      dy[i] = boost::math::sinc_pi(-kTableHalfWidth + i * h);
    }
    return HermiteTable(std::move(y), std::move(dy), -kTableHalfWidth, h);
  }();
  return table;
}

void require_basin(double xi, const GainSet& g) {
  if (!(std::abs(xi) < 2.0 * g.rho)) {
    fail_validation("bound is only defined for |xi| < 2 rho");
  }
}

}  // namespace

double sine_integral_quadrature(double xi) {
  if (xi == 0.0) return 0.0;
  auto f = [](double s) { return boost::math::sinc_pi(s); };
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, 0.0, xi, 15, 1e-14, &err);
  return value;
}

double sine_integral(double xi) {
  const double a = std::abs(xi);
  const double value =
      a <= kTableHalfWidth ? sine_integral_table()(a) : sine_integral_quadrature(a);
  return std::copysign(value, xi);
}

double lyapunov_formula(double y1, double y2, double xi, const GainSet& g) {
  return 0.5 * (y1 * y1 + y2 * y2) + sine_integral(xi) * y2 / g.c0 +
         g.n * xi * xi / (2.0 * g.c0);
}

double lyapunov_value(const ErrorCoords& err, const GainSet& g) {
  if (!(g.n > 1.0 / g.c0)) {
    fail_validation("V requires N > 1/C0 to be positive definite");
  }
  return lyapunov_formula(err.y1, err.y2, err.xi, g);
}

double lyapunov_rate(const ErrorCoords& err, const ErrorRates& rates,
                     const GainSet& g) {
  const double dv_dy1 = err.y1;
  const double dv_dy2 = err.y2 + sine_integral(err.xi) / g.c0;
  const double dv_dxi =
      (boost::math::sinc_pi(err.xi) * err.y2 + g.n * err.xi) / g.c0;
  return dv_dy1 * rates.y1 + dv_dy2 * rates.y2 + dv_dxi * rates.xi;
}

double a_bound(double y1, double xi, const GainSet& g) {
  require_basin(xi, g);
  return g.c1 * y1 * saturate(g.m * y1) -
         (3.0 + g.c1) * g.kappa_max / g.c0 * std::abs(xi * y1) -
         0.5 * xi * xi * std::abs(y1) + 0.5 * (g.n - 1.0 / g.c0) * xi * xi;
}

double b_bound(double y2, double xi, const GainSet& g) {
  require_basin(xi, g);
  const double sat = saturate(g.c2 * y2);
  return 0.5 * (g.n - 1.0 / g.c0) * xi * xi - g.rho * g.n * std::abs(xi * sat) +
         (1.0 - 2.0 * g.rho * g.rho / 3.0) * g.rho * y2 * sat;
}

double d_form(double z, double xi, const GainSet& g) {
  return (1.0 - 2.0 * g.rho * g.rho / 3.0) * z * z -
         g.c2 * g.n * std::abs(xi * z) +
         g.c2 / g.rho * (g.n - 1.0 / g.c0) * xi * xi;
}

double b_quadratic_form(double z, double xi, const GainSet& g) {
  return (1.0 - 2.0 * g.rho * g.rho / 3.0) * z * z -
         g.c2 * g.n * std::abs(xi * z) +
         g.c2 / (2.0 * g.rho) * (g.n - 1.0 / g.c0) * xi * xi;
}

BDecomposition b_decomposition(double y2, double xi, const GainSet& g) {
  require_basin(xi, g);
  const double sat = saturate(g.c2 * y2);
  BDecomposition out;
  out.saturation_part =
      g.rho * (1.0 - 2.0 * g.rho * g.rho / 3.0) * (y2 - sat / g.c2) * sat;
  out.form_value = b_quadratic_form(sat, xi, g);
  out.form_part = g.rho / g.c2 * out.form_value;
  return out;
}

bool GridResult::passed() const {
  return a_negative == 0 && b_negative == 0 && a_zero_off_origin == 0 &&
         b_zero_off_origin == 0;
}

std::string GridResult::text() const {
  std::ostringstream os;
  os << "grid: " << points << " x " << points << ", |xi| <= "
     << format_general(xi_max, 12) << '\n'
     << "A: min = " << format_general(a_min, 12) << " at (y1="
     << format_general(a_min_y, 8) << ", xi=" << format_general(a_min_xi, 8)
     << "), negative = " << a_negative << ", zero off origin = "
     << a_zero_off_origin << ", origin = " << format_general(a_origin, 6) << '\n'
     << "B: min = " << format_general(b_min, 12) << " at (y2="
     << format_general(b_min_y, 8) << ", xi=" << format_general(b_min_xi, 8)
     << "), negative = " << b_negative << ", zero off origin = "
     << b_zero_off_origin << ", origin = " << format_general(b_origin, 6) << '\n'
     << "verdict: " << (passed() ? "pass" : "FAIL") << '\n';
  return os.str();
}

GridResult positivity_grid(const GainSet& g, const GridOptions& opt) {
  if (opt.points < 3 || opt.points % 2 == 0) {
    fail_validation("grid size must be odd and >= 3");
  }
  if (!(opt.y_extent > 0.0)) fail_validation("grid extent must be > 0");
  if (!(g.rho > 0.0) || !(g.c0 > 0.0) || !(g.c2 > 0.0)) {
    fail_validation("grid needs positive rho, C0 and C2");
  }

  const int c = (opt.points - 1) / 2;
  // Open interval ]-2 rho, 2 rho[: endpoints sit one spacing inside.
  auto xi_at = [&](int j) { return 2.0 * g.rho * (j - c) / (c + 1); };
  auto y_at = [&](int i) { return opt.y_extent * (i - c) / c; };

  GridResult r;
  r.points = opt.points;
  r.xi_max = std::abs(xi_at(0));
  r.a_min = r.b_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opt.points; ++i) {
    const double y = y_at(i);
    for (int j = 0; j < opt.points; ++j) {
      const double xi = xi_at(j);
      const double a = a_bound(y, xi, g);
      const double b = b_bound(y, xi, g);
      const bool origin = (i == c && j == c);
      if (a < r.a_min) { r.a_min = a; r.a_min_y = y; r.a_min_xi = xi; }
      if (b < r.b_min) { r.b_min = b; r.b_min_y = y; r.b_min_xi = xi; }
      if (a < -opt.zero_tol) ++r.a_negative;
      if (b < -opt.zero_tol) ++r.b_negative;
      if (origin) {
        r.a_origin = a;
        r.b_origin = b;
        if (std::abs(a) > opt.zero_tol) ++r.a_negative;
        if (std::abs(b) > opt.zero_tol) ++r.b_negative;
      } else {
        if (std::abs(a) <= opt.zero_tol) ++r.a_zero_off_origin;
        if (std::abs(b) <= opt.zero_tol) ++r.b_zero_off_origin;
      }
    }
  }
  return r;
}

namespace {

unsigned regime_of(const LogRow& row, const GainSet& g, ControllerVariant variant) {
  unsigned bits = 0;
  if (std::abs(g.m * row.y1) > 1.0) bits |= 1u;
  if (std::abs(g.c2 * row.y2) > 1.0) bits |= 2u;
  if (variant == ControllerVariant::kSaturated &&
      std::abs(u2_saturation_argument(row.xi, row.y2, g)) > 1.0) {
    bits |= 4u;
  }
  return bits;
}

VdotViolation snapshot(const LogRow& row, std::size_t k, std::string what) {
  return {k, row.t, std::move(what), row.y1, row.y2, row.xi, row.V, row.Vdot};
}

}  // namespace

bool VdotReport::decrease_verified() const {
  return t0_found && trapping_violations == 0 && monotone_violations == 0 &&
         decrease_violations == 0;
}

std::string VdotReport::text() const {
  std::ostringstream os;
  if (!t0_found) {
    os << "t0: not found (|xi| < 2 rho never sustained)\n";
    os << "verdict: FAIL\n";
    return os.str();
  }
  os << "t0 = " << format_fixed(t0, 6) << " s (row " << t0_index << ")\n"
     << "post-t0 steps = " << post_t0_steps << '\n'
     << "trapping violations (|xi| >= 2 rho) = " << trapping_violations << '\n'
     << "u2 saturation active after t0 = " << saturation_active << '\n'
     << "V non-increase violations = " << monotone_violations
     << " (max increase " << format_general(max_increase, 6) << ")\n"
     << "Vdot <= -A-B violations = " << decrease_violations
     << " (max Vdot+A+B " << format_general(max_decrease_excess, 6) << ")\n"
     << "V(t0) = " << format_general(v_t0, 10) << ", V(end) = "
     << format_general(v_end, 10) << ", ratio = "
     << format_general(v_t0 > 0.0 ? v_end / v_t0 : 0.0, 6) << '\n'
     << "finite-difference check on " << smooth_points
     << " smooth steps: max |Vdot - FD| = " << format_general(max_fd_gap, 6)
     << " at t = " << format_fixed(max_fd_gap_t, 6)
     << " (bound " << format_general(gap_bound, 6) << ")\n";
  for (const auto& v : violations) {
    os << "violation at t=" << format_fixed(v.t, 6) << " (row " << v.index
       << "): " << v.what << " y1=" << format_general(v.y1, 10)
       << " y2=" << format_general(v.y2, 10) << " xi=" << format_general(v.xi, 10)
       << " V=" << format_general(v.V, 10) << " Vdot=" << format_general(v.Vdot, 10)
       << '\n';
  }
  os << "verdict: " << (decrease_verified() ? "pass" : "FAIL") << '\n';
  return os.str();
}

VdotReport vdot_check(const TrajectoryLog& log, const GainSet& g,
                      ControllerVariant variant, const VdotOptions& opt) {
  constexpr std::size_t kMaxSnapshots = 8;
  VdotReport rep;
  const auto& rows = log.rows;
  const std::size_t n = rows.size();
  const double basin = 2.0 * g.rho;
  rep.gap_bound = opt.gap_factor * log.dt * log.dt;

  std::size_t run = 0;
  for (std::size_t k = 0; k < n; ++k) {
    run = std::abs(rows[k].xi) < basin ? run + 1 : 0;
    if (run >= opt.t0_window) {
      rep.t0_found = true;
      rep.t0_index = k + 1 - opt.t0_window;
      rep.t0 = rows[rep.t0_index].t;
      break;
    }
  }
  if (!rep.t0_found) return rep;

  const std::size_t k0 = rep.t0_index;
  rep.v_t0 = rows[k0].V;
  rep.v_end = rows.back().V;
  rep.post_t0_steps = n - k0;

  std::vector<unsigned> regime(n);
  for (std::size_t k = 0; k < n; ++k) regime[k] = regime_of(rows[k], g, variant);

  for (std::size_t k = k0; k < n; ++k) {
    const LogRow& row = rows[k];
    if (!(std::abs(row.xi) < basin)) {
      ++rep.trapping_violations;
      if (rep.violations.size() < kMaxSnapshots) {
        rep.violations.push_back(snapshot(row, k, "|xi| >= 2 rho"));
      }
      continue;
    }
    if (std::abs(u2_saturation_argument(row.xi, row.y2, g)) > 1.0) {
      ++rep.saturation_active;
    }
    const double bound = -a_bound(row.y1, row.xi, g) - b_bound(row.y2, row.xi, g);
    const double excess = row.Vdot - bound;
    rep.max_decrease_excess = k == k0 ? excess : std::max(rep.max_decrease_excess, excess);
    if (excess > opt.decrease_tol) {
      ++rep.decrease_violations;
      if (rep.violations.size() < kMaxSnapshots) {
        rep.violations.push_back(snapshot(row, k, "Vdot > -A - B"));
      }
    }
    if (k + 1 < n) {
      const double inc = rows[k + 1].V - row.V;
      rep.max_increase = k == k0 ? inc : std::max(rep.max_increase, inc);
      if (inc > opt.monotone_tol) {
        ++rep.monotone_violations;
        if (rep.violations.size() < kMaxSnapshots) {
          rep.violations.push_back(snapshot(row, k, "V increases"));
        }
      }
    }
    if (k >= 2 && k + 2 < n) {
      bool smooth = true;
      for (std::size_t j = k - 2; j <= k + 2; ++j) smooth &= regime[j] == regime[k];
      if (smooth) {
        ++rep.smooth_points;
        const double fd = (rows[k + 1].V - rows[k - 1].V) / (2.0 * log.dt) / row.v_d;
        const double gap = std::abs(fd - row.Vdot);
        if (gap > rep.max_fd_gap) {
          rep.max_fd_gap = gap;
          rep.max_fd_gap_t = row.t;
        }
      }
    }
  }
  return rep;
}

}  // namespace tpf
