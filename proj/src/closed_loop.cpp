#include "closed_loop.hpp"

#include <cmath>

namespace tpf {

std::array<double, WorldState::kSize> WorldState::to_array() const {
  return {ref.p_r, ref.q_r, ref.psi_r, ref.s, veh.x, veh.y, veh.psi, veh.v};
}

WorldState WorldState::from_array(const std::array<double, kSize>& a) {
  WorldState w;
  w.ref = {a[0], a[1], a[2], a[3]};
  w.veh = {a[4], a[5], a[6], a[7]};
  return w;
}

LoopEvaluation closed_loop_rhs(const WorldState& world, const LoopInputs& in) {
  const GainSet& g = in.gains;
  LoopEvaluation ev;
  ev.target = target_from_vehicle(world.veh, g.d, in.vx);
  ev.err = error_coords(ev.target, world.ref);
  ev.kappa_r = in.path.curvature_at(world.ref.s);

  const double vx_meas = in.vx + in.noise.vx;
  const double kappa_meas = ev.kappa_r + in.noise.kappa;
  const double dv = g.d * world.veh.v;
  ev.vd_measured = vx_meas * std::sqrt(1.0 + dv * dv);

  const Feedback fb = feedback(ev.err, g, in.variant);
  ControlSample& c = ev.control;
  c.u1 = fb.u1;
  c.u2 = fb.u2;
  c.u = ev.vd_measured * (1.0 + fb.u1);
  c.omega = omega_command(kappa_meas, fb.u1, fb.u2);
  c.vdot = curvature_ode_rhs(world.veh.v, c.omega, g.d, vx_meas);

  ev.rate.ref = reference_derivative(world.ref, c.u, ev.kappa_r);
  ev.rate.veh = {in.vx * std::cos(world.veh.psi),
                 in.vx * std::sin(world.veh.psi), in.vx * world.veh.v, c.vdot};
  return ev;
}

ErrorRates error_rates(const WorldState& world, const LoopEvaluation& ev,
                       double d) {
  const VehicleState& vr = ev.rate.veh;
  const ReferenceState& rr = ev.rate.ref;
  const double psi = world.veh.psi;
  const double pdot = vr.x - d * std::sin(psi) * vr.psi;
  const double qdot = vr.y + d * std::cos(psi) * vr.psi;
  const double ep_dot = pdot - rr.p_r;
  const double eq_dot = qdot - rr.q_r;
  const double c = std::cos(world.ref.psi_r);
  const double s = std::sin(world.ref.psi_r);
  const double dv = d * world.veh.v;

  ErrorRates r;
  r.y1 = ep_dot * c + eq_dot * s + rr.psi_r * ev.err.y2;
  r.y2 = -ep_dot * s + eq_dot * c - rr.psi_r * ev.err.y1;
  r.xi = vr.psi + d * vr.v / (1.0 + dv * dv) - rr.psi_r;
  return r;
}

}  // namespace tpf
