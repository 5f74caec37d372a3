#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "closed_loop.hpp"
#include "errors.hpp"
#include "gain_synthesis.hpp"
#include "kinematics.hpp"
#include "steering.hpp"

using namespace tpf;

namespace {

GainSet baseline_gains() {
  GainSet g;
  g.c0 = 0.4; g.c1 = 0.7; g.c2 = 1.0; g.m = 1562; g.n = 3.0;
  g.beta = 0.96; g.rho = 0.2; g.d = 2.0; g.kappa_max = 0.02;
  return g;
}

}  // namespace

TEST_CASE("target point from vehicle pose") {
  auto t = target_from_vehicle({0, 0, 0, 0}, 2.0, 15.0);
  CHECK(t.p == 2.0);
  CHECK(t.q == 0.0);
  CHECK(t.theta == 0.0);
  CHECK(t.v_d == 15.0);

  t = target_from_vehicle({0, 0, std::numbers::pi / 2, 0}, 2.0, 15.0);
  CHECK(std::abs(t.p) < 1e-15);
  CHECK(t.q == doctest::Approx(2.0));
  CHECK(t.theta == doctest::Approx(std::numbers::pi / 2));

  t = target_from_vehicle({1, 1, 0, 0.25}, 2.0, 15.0);
  CHECK(t.p == 3.0);
  CHECK(t.q == 1.0);
  CHECK(t.theta == doctest::Approx(0.4636476090008061).epsilon(1e-14));
  CHECK(t.v_d == doctest::Approx(16.770509831244).epsilon(1e-12));

  CHECK_THROWS_AS(target_from_vehicle({}, 0.0, 15.0), Error);
  CHECK_THROWS_AS(target_from_vehicle({}, 2.0, 0.0), Error);
}

TEST_CASE("target point velocity along a rigid link") {
  auto r = target_derivative({0, 0, 0, 0}, 2.0, 15.0, 0.0);
  CHECK(r.p == 15.0);
  CHECK(r.q == 0.0);
  CHECK(r.psi == 0.0);

  r = target_derivative({0, 0, 0, 0.1}, 2.0, 15.0, 0.1);
  CHECK(r.p == doctest::Approx(15.0));
  CHECK(r.q == doctest::Approx(3.0));
  CHECK(r.psi == doctest::Approx(1.5));
  CHECK(std::hypot(r.p, r.q) == doctest::Approx(15.0 * std::sqrt(1.04)).epsilon(1e-14));
}

TEST_CASE("target velocity agrees with differencing the pose along a step") {
  // Vehicle moving with fixed steering curvature v: exact circular motion.
  const double d = 2.0, vx = 15.0, v = 0.1, h = 1e-5;
  auto pose_at = [&](double t) {
    const double psi = 0.3 + vx * v * t;
    return VehicleState{std::sin(psi) / v - std::sin(0.3) / v,
                        -std::cos(psi) / v + std::cos(0.3) / v, psi, v};
  };
  const auto a = target_from_vehicle(pose_at(-h), d, vx);
  const auto b = target_from_vehicle(pose_at(h), d, vx);
  const auto r = target_derivative(pose_at(0.0), d, vx, v);
  CHECK((b.p - a.p) / (2 * h) == doctest::Approx(r.p).epsilon(1e-7));
  CHECK((b.q - a.q) / (2 * h) == doctest::Approx(r.q).epsilon(1e-7));
}

TEST_CASE("error coordinates rotate into the reference frame") {
  const TargetState target{2, 0, 0, 15};
  auto e = error_coords(target, ReferenceState{2, 0, 0, 0});
  CHECK(e.e_p == 0.0);
  CHECK(e.e_q == 0.0);
  CHECK(e.xi == 0.0);
  CHECK(e.y1 == 0.0);
  CHECK(e.y2 == 0.0);

  e = error_coords(TargetState{3, 4, 0, 15}, ReferenceState{0, 0, 0, 0});
  CHECK(e.y1 == 3.0);
  CHECK(e.y2 == 4.0);

  e = error_coords(TargetState{3, 4, 0, 15}, ReferenceState{0, 0, std::numbers::pi / 2, 0});
  CHECK(e.y1 == doctest::Approx(4.0));
  CHECK(e.y2 == doctest::Approx(-3.0));
  CHECK(e.xi == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("rotation preserves the error norm") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const TargetState t{u(rng), u(rng), u(rng) / 10, 15};
    const ReferenceState r{u(rng), u(rng), u(rng), 0};
    const auto e = error_coords(t, r);
    const double lhs = e.y1 * e.y1 + e.y2 * e.y2;
    const double rhs = e.e_p * e.e_p + e.e_q * e.e_q;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(rhs, 1e-300));
    // Heading error is not wrapped.
    CHECK(e.xi == t.theta - r.psi_r);
  }
}

TEST_CASE("speed profile bounds") {
  const auto s = SpeedProfile::sinusoidal(15.0, 2.0, 4.0);
  CHECK(s.v_min() == 13.0);
  CHECK(s.v_max() == 17.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = s.at(0.013 * i);
    CHECK(v >= s.v_min());
    CHECK(v <= s.v_max());
  }
  CHECK(SpeedProfile::constant(15.0).at(123.0) == 15.0);
  CHECK_THROWS_AS(SpeedProfile::sinusoidal(15.0, 15.0, 4.0), Error);
  CHECK_THROWS_AS(SpeedProfile::constant(0.0), Error);
}

TEST_CASE("closed loop at the origin of a straight path") {
  const GainSet g = baseline_gains();
  const auto path = PathSpec::constant(0.0, 0.02);
  WorldState w;
  w.ref = {2.0, 0.0, 0.0, 0.0};  // on the target point of a vehicle at the origin
  const auto ev = closed_loop_rhs(w, LoopInputs{g, path, ControllerVariant::kSaturated, 15.0});
  CHECK(ev.control.u1 == 0.0);
  CHECK(ev.control.u2 == 0.0);
  CHECK(ev.control.vdot == 0.0);
  CHECK(ev.control.u == ev.target.v_d);
  CHECK(ev.rate.ref.p_r == 15.0);

  // Residual steering curvature decays.
  w.veh.v = 0.05;
  w.ref = {2.0, 0.0, std::atan(0.1), 0.0};
  const auto ev1 = closed_loop_rhs(w, LoopInputs{g, path, ControllerVariant::kSaturated, 15.0});
  CHECK(ev1.err.xi == doctest::Approx(0.0));
  CHECK(ev1.control.u2 == doctest::Approx(0.0));
  CHECK(ev1.control.vdot < 0.0);
}

TEST_CASE("closed loop identities on random states") {
  const GainSet g = baseline_gains();
  const auto path = PathSpec::sinusoidal(0.02, 300.0, 0.02);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    WorldState w;
    w.ref = {20 * u(rng), 20 * u(rng), 3 * u(rng), 100 + 100 * u(rng)};
    w.veh = {20 * u(rng), 20 * u(rng), 3 * u(rng), 0.45 * u(rng)};
    const double vx = 15.0 + 2.0 * u(rng);
    const auto ev = closed_loop_rhs(w, LoopInputs{g, path, ControllerVariant::kSaturated, vx});

    // Arclength advances at the reference speed.
    CHECK(ev.rate.ref.s == ev.control.u);
    CHECK(ev.control.u > 0.0);

    // The realised target curvature equals the command.
    const double v = w.veh.v, d = g.d;
    const double vd = vx * std::sqrt(1.0 + v * v * d * d);
    const double omega_realised =
        vx * v / vd + d * ev.rate.veh.v / (vd * (1.0 + v * v * d * d));
    CHECK(std::abs(omega_realised - ev.control.omega) <= 1e-9);

    // Heading of the target point is derived, never integrated.
    CHECK(std::abs(ev.target.theta - w.veh.psi - std::atan(d * v)) <= 1e-12);
  }
}

TEST_CASE("heading feedback opposes the combined heading and cross-track error") {
  const GainSet g = baseline_gains();
  const auto path = PathSpec::constant(0.0, 0.02);
  WorldState w;
  const double xi0 = 0.9 * std::numbers::pi;
  w.ref = {0, 0, 0, 0};
  w.veh.psi = xi0;
  w.veh.x = 10.0 - 2.0 * std::cos(xi0);
  w.veh.y = 10.0 - 2.0 * std::sin(xi0);
  const auto ev = closed_loop_rhs(w, LoopInputs{g, path, ControllerVariant::kSaturated, 15.0});
  CHECK(ev.err.e_p == doctest::Approx(10.0));
  CHECK(ev.err.xi == doctest::Approx(xi0));
  CHECK(ev.err.xi + g.rho * saturate(g.c2 * ev.err.y2) > 0.0);
  CHECK(ev.control.u2 < 0.0);
}

TEST_CASE("chain-rule error rates match finite differences") {
  const GainSet g = synthesize_gains(2.0, 0.02, 0.4, 1.0);
  const auto path = PathSpec::sinusoidal(0.02, 300.0, 0.02);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    WorldState w;
    w.ref = {3 * u(rng), 3 * u(rng), u(rng), 50 + 10 * u(rng)};
    w.veh = {3 * u(rng), 3 * u(rng), u(rng), 0.2 * u(rng)};
    const LoopInputs in{g, path, ControllerVariant::kSaturated, 15.0};
    const auto ev = closed_loop_rhs(w, in);
    const auto rates = error_rates(w, ev, g.d);

    const double h = 1e-6;
    auto shifted = [&](double k) {
      auto a = w.to_array();
      const auto r = ev.rate.to_array();
      for (std::size_t j = 0; j < a.size(); ++j) a[j] += k * h * r[j];
      return closed_loop_rhs(WorldState::from_array(a), in).err;
    };
    const auto ep = shifted(1.0), em = shifted(-1.0);
    CHECK((ep.y1 - em.y1) / (2 * h) == doctest::Approx(rates.y1).epsilon(1e-5).scale(1.0));
    CHECK((ep.y2 - em.y2) / (2 * h) == doctest::Approx(rates.y2).epsilon(1e-5).scale(1.0));
    CHECK((ep.xi - em.xi) / (2 * h) == doctest::Approx(rates.xi).epsilon(1e-5).scale(1.0));
  }
}
