#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "lyapunov.hpp"
#include "numfmt.hpp"

namespace tpf {
namespace {

using State = std::array<double, WorldState::kSize>;

State axpy(const State& x, double a, const State& y) {
  State out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

bool all_finite(const State& s) {
  return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

LoopInputs inputs_at(const Scenario& sc, double t, const PerturbationSample& noise) {
  return LoopInputs{sc.gains, sc.path, sc.variant, sc.speed.at(t), noise};
}

State rate_at(const State& x, const Scenario& sc, double t,
              const PerturbationSample& noise) {
  const State r =
      closed_loop_rhs(WorldState::from_array(x), inputs_at(sc, t, noise)).rate.to_array();
  if (!all_finite(r)) {
    throw Error(ErrorKind::kNumerical, "non-finite derivative");
  }
  return r;
}

State rk4(const State& x, const State& k1, const Scenario& sc, double t,
          const PerturbationSample& noise) {
  const double h = sc.dt;
  const State k2 = rate_at(axpy(x, 0.5 * h, k1), sc, t + 0.5 * h, noise);
  const State k3 = rate_at(axpy(x, 0.5 * h, k2), sc, t + 0.5 * h, noise);
  const State k4 = rate_at(axpy(x, h, k3), sc, t + h, noise);
  State out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::string state_snapshot(const WorldState& w) {
  std::ostringstream os;
  os << "p_r=" << format_general(w.ref.p_r, 10) << " q_r=" << format_general(w.ref.q_r, 10)
     << " psi_r=" << format_general(w.ref.psi_r, 10) << " s=" << format_general(w.ref.s, 10)
     << " x=" << format_general(w.veh.x, 10) << " y=" << format_general(w.veh.y, 10)
     << " psi=" << format_general(w.veh.psi, 10) << " v=" << format_general(w.veh.v, 10);
  return os.str();
}

std::string optional_time(const std::optional<double>& t) {
  return t ? format_fixed(*t, 6) : std::string("none");
}

std::vector<std::pair<std::string, std::string>> summary_pairs(const RunResult& r) {
  const RunSummary& s = r.summary;
  std::string failed;
  for (const auto& g : r.gain_report.failed_groups()) {
    if (!failed.empty()) failed += ',';
    failed += g;
  }
  return {
      {"summary.steps", std::to_string(s.steps)},
      {"summary.t_conv", optional_time(s.t_conv)},
      {"summary.t0", optional_time(s.t0)},
      {"summary.max_abs_d_omega", format_fixed(s.max_abs_d_omega, 9)},
      {"summary.max_abs_v", format_fixed(s.max_abs_v, 9)},
      {"summary.min_v_d", format_fixed(s.min_v_d, 9)},
      {"summary.gain_verdict", r.gain_report.passed ? "pass" : "fail"},
      {"summary.failed_conditions", failed.empty() ? "none" : failed},
      {"summary.guard_enforced", s.guard_enforced ? "1" : "0"},
      {"summary.guard_violations", std::to_string(s.guard_violations)},
      {"summary.omega_warnings", std::to_string(s.omega_warnings)},
      {"summary.aborted", s.aborted ? "1" : "0"},
  };
}

std::vector<std::pair<std::string, std::string>> config_pairs(const Scenario& sc) {
  const GainSet& g = sc.gains;
  return {
      {"vehicle.d", format_general(sc.d)},
      {"path.kappa_max", format_general(sc.path.kappa_max())},
      {"gains.c0", format_general(g.c0)},
      {"gains.c1", format_general(g.c1)},
      {"gains.c2", format_general(g.c2)},
      {"gains.m", format_general(g.m)},
      {"gains.n", format_general(g.n)},
      {"gains.beta", format_general(g.beta)},
      {"gains.rho", format_general(g.rho)},
      {"controller.variant", std::string(to_string(sc.variant))},
      {"sim.dt", format_general(sc.dt)},
      {"sim.seed", std::to_string(sc.seed)},
  };
}

}  // namespace

double NoiseSource::symmetric_unit() {
  // 53 random mantissa bits -> [0, 1), then map to [-1, 1).
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

PerturbationSample NoiseSource::next(const PerturbationSpec& spec, double t) {
  switch (spec.kind) {
    case NoiseKind::kNone:
      return {};
    case NoiseKind::kUniform: {
      const double a = symmetric_unit();
      const double b = symmetric_unit();
      return {spec.kappa_amp * a, spec.vx_amp * b};
    }
    case NoiseKind::kSinusoidal: {
      const double phase = 2.0 * std::numbers::pi * spec.frequency * t;
      return {spec.kappa_amp * std::sin(phase), spec.vx_amp * std::cos(phase)};
    }
  }
  return {};
}

Measurement perturb(double kappa, double vx, const PerturbationSpec& spec,
                    double t, NoiseSource& source) {
  const PerturbationSample n = source.next(spec, t);
  return {kappa + n.kappa, vx + n.vx};
}

WorldState initial_world(const Scenario& sc) {
  WorldState w;
  w.ref = sc.ref0;
  w.veh = sc.initial_vehicle();
  return w;
}

WorldState step(const WorldState& world, const Scenario& sc, double t,
                const PerturbationSample& noise) {
  const State x = world.to_array();
  const State k1 = rate_at(x, sc, t, noise);
  const State next = rk4(x, k1, sc, t, noise);
  if (!all_finite(next)) throw Error(ErrorKind::kNumerical, "non-finite state");
  return WorldState::from_array(next);
}

RunResult run(const Scenario& sc) {
  RunResult result;
  result.gain_report = check_conditions(sc.gains);
  const ConditionReport& rep = result.gain_report;
  RunSummary& sum = result.summary;
  TrajectoryLog& log = result.log;
  log.dt = sc.dt;

  const GainSet& g = sc.gains;
  const bool h1 = rep.find("h1")->pass;
  const bool cond0 = rep.find("cond0_c1")->pass && rep.find("cond0_beta")->pass;
  sum.guard_enforced = sc.variant == ControllerVariant::kSaturated && h1 && cond0;
  sum.min_v_d = std::numeric_limits<double>::infinity();

  const auto n = static_cast<std::size_t>(std::llround(sc.duration / sc.dt));
  log.rows.reserve(n + 1);
  NoiseSource noise_source(sc.seed);
  WorldState world = initial_world(sc);

  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * sc.dt;
    try {
      const PerturbationSample noise = noise_source.next(sc.noise, t);
      const LoopEvaluation ev = closed_loop_rhs(world, inputs_at(sc, t, noise));
      const State k1 = ev.rate.to_array();
      if (!all_finite(k1)) throw Error(ErrorKind::kNumerical, "non-finite derivative");

      const ErrorRates rates = error_rates(world, ev, g.d);
      LogRow row{};
      row.t = t;
      row.x = world.veh.x;
      row.y = world.veh.y;
      row.psi = world.veh.psi;
      row.v = world.veh.v;
      row.p = ev.target.p;
      row.q = ev.target.q;
      row.theta = ev.target.theta;
      row.p_r = world.ref.p_r;
      row.q_r = world.ref.q_r;
      row.psi_r = world.ref.psi_r;
      row.s = world.ref.s;
      row.e_p = ev.err.e_p;
      row.e_q = ev.err.e_q;
      row.xi = ev.err.xi;
      row.y1 = ev.err.y1;
      row.y2 = ev.err.y2;
      row.u1 = ev.control.u1;
      row.u2 = ev.control.u2;
      row.u = ev.control.u;
      row.omega = ev.control.omega;
      row.v_d = ev.target.v_d;
      row.V = lyapunov_formula(ev.err.y1, ev.err.y2, ev.err.xi, g);
      row.Vdot = lyapunov_rate(ev.err, rates, g) / ev.target.v_d;
      log.rows.push_back(row);

      const double d_omega = std::abs(g.d * ev.control.omega);
      sum.max_abs_d_omega = std::max(sum.max_abs_d_omega, d_omega);
      sum.max_abs_v = std::max(sum.max_abs_v, std::abs(world.veh.v));
      sum.min_v_d = std::min(sum.min_v_d, ev.target.v_d);
      if (sc.variant == ControllerVariant::kSaturated && h1) {
        if (!lemma1_guard(ev.control.u1, ev.control.u2, g.d, g.kappa_max)) {
          if (sum.guard_enforced) {
            throw Error(ErrorKind::kNumerical,
                        "steering budget |u1|/d + |u2| <= beta_M violated "
                        "under Cond0-compliant gains");
          }
          ++sum.guard_violations;
        }
      } else if (sc.variant == ControllerVariant::kRemark3 && d_omega > 1.0) {
        ++sum.omega_warnings;
      }

      if (k == n) break;
      const State next = rk4(world.to_array(), k1, sc, t, noise);
      if (!all_finite(next)) throw Error(ErrorKind::kNumerical, "non-finite state");
      world = WorldState::from_array(next);
    } catch (const Error& e) {
      sum.aborted = true;
      sum.abort_message = "integration aborted at t=" + format_fixed(t, 6) +
                          ": " + e.what() + " [" + state_snapshot(world) + "]";
      break;
    }
  }
  sum.steps = log.rows.empty() ? 0 : log.rows.size() - 1;

  // Convergence time: start of the final run of converged rows.
  if (!sum.aborted && !log.rows.empty()) {
    std::size_t first_good = log.rows.size();
    for (std::size_t k = log.rows.size(); k-- > 0;) {
      const LogRow& r = log.rows[k];
      const bool ok = std::hypot(r.e_p, r.e_q) < kConvergedPosition &&
                      std::abs(r.xi) < kConvergedHeading;
      if (!ok) break;
      first_good = k;
    }
    if (first_good < log.rows.size()) sum.t_conv = log.rows[first_good].t;
  }

  std::size_t inside = 0;
  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    inside = std::abs(log.rows[k].xi) < 2.0 * g.rho ? inside + 1 : 0;
    if (inside >= kTrappingWindow) {
      sum.t0 = log.rows[k + 1 - kTrappingWindow].t;
      break;
    }
  }

  log.metadata = summary_pairs(result);
  if (sum.aborted) log.metadata.emplace_back("summary.abort_message", sum.abort_message);
  for (auto& kv : config_pairs(sc)) log.metadata.push_back(std::move(kv));
  return result;
}

std::string summary_text(const RunResult& r) {
  std::ostringstream os;
  for (const auto& [k, v] : summary_pairs(r)) os << k << " = " << v << '\n';
  if (r.summary.aborted) os << "summary.abort_message = " << r.summary.abort_message << '\n';
  return os.str();
}

}  // namespace tpf
