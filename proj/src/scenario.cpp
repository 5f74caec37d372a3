#include "scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "numfmt.hpp"

namespace tpf {
namespace {

constexpr std::array kKnownKeys = {
    "vehicle.d",
    "speed.kind", "speed.v", "speed.amplitude", "speed.period",
    "path.kind", "path.kappa_max", "path.samples", "path.amplitude",
    "path.period", "path.s0",
    "gains.c0", "gains.c1", "gains.c2", "gains.m", "gains.n", "gains.beta",
    "gains.rho",
    "controller.variant",
    "init.e_p", "init.e_q", "init.xi", "init.x", "init.y", "init.psi", "init.v",
    "ref.p_r", "ref.q_r", "ref.psi_r",
    "sim.dt", "sim.duration", "sim.seed",
    "noise.kind", "noise.kappa_amp", "noise.vx_amp", "noise.frequency",
};

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& v) : v_(v) {}

  bool has(const std::string& key) const { return v_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    auto it = v_.find(key);
    if (it == v_.end()) fail_usage("scenario is missing required key '" + key + "'");
    return it->second;
  }

  double number(const std::string& key) const {
    double out = 0.0;
    if (!parse_double(text(key), out) || !std::isfinite(out)) {
      fail_usage("scenario key '" + key + "' is not a finite number: '" +
                 text(key) + "'");
    }
    return out;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::string text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

 private:
  const std::map<std::string, std::string>& v_;
};

// "s:kappa, s:kappa, ..."
std::vector<CurvatureSample> parse_samples(const std::string& text) {
  std::vector<CurvatureSample> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string entry = trim(item);
    if (entry.empty()) continue;
    const auto colon = entry.find(':');
    CurvatureSample c{};
    if (colon == std::string::npos || !parse_double(entry.substr(0, colon), c.s) ||
        !parse_double(entry.substr(colon + 1), c.kappa)) {
      fail_usage("path.samples entry '" + entry + "' is not of the form s:kappa");
    }
    out.push_back(c);
  }
  return out;
}

PathSpec build_path(const Reader& r) {
  const std::string kind = r.text("path.kind");
  const double kappa_max = r.number("path.kappa_max");
  const double s0 = r.number_or("path.s0", 0.0);
  if (kind == "constant") {
    return PathSpec::constant(r.number("path.amplitude"), kappa_max, s0);
  }
  if (kind == "piecewise") {
    return PathSpec::piecewise_linear(parse_samples(r.text("path.samples")),
                                      kappa_max, s0);
  }
  if (kind == "sinusoidal") {
    return PathSpec::sinusoidal(r.number_or("path.amplitude", kappa_max),
                                r.number("path.period"), kappa_max, s0);
  }
  fail_usage("path.kind must be constant, piecewise or sinusoidal, got '" + kind + "'");
}

SpeedProfile build_speed(const Reader& r) {
  const std::string kind = r.text_or("speed.kind", "constant");
  if (kind == "constant") return SpeedProfile::constant(r.number("speed.v"));
  if (kind == "sinusoidal") {
    return SpeedProfile::sinusoidal(r.number("speed.v"),
                                    r.number_or("speed.amplitude", 0.0),
                                    r.number("speed.period"));
  }
  fail_usage("speed.kind must be constant or sinusoidal, got '" + kind + "'");
}

PerturbationSpec build_noise(const Reader& r, const SpeedProfile& speed) {
  PerturbationSpec p;
  const std::string kind = r.text_or("noise.kind", "none");
  if (kind == "none") {
    p.kind = NoiseKind::kNone;
  } else if (kind == "uniform") {
    p.kind = NoiseKind::kUniform;
  } else if (kind == "sinusoidal") {
    p.kind = NoiseKind::kSinusoidal;
  } else {
    fail_usage("noise.kind must be none, uniform or sinusoidal, got '" + kind + "'");
  }
  p.kappa_amp = r.number_or("noise.kappa_amp", 0.0);
  p.vx_amp = r.number_or("noise.vx_amp", 0.0);
  p.frequency = r.number_or("noise.frequency", 1.0);
  if (p.kappa_amp < 0.0 || p.vx_amp < 0.0) {
    fail_validation("noise amplitudes must be >= 0");
  }
  if (!(p.vx_amp < speed.v_min())) {
    fail_validation("noise.vx_amp must stay below the minimum forward speed");
  }
  if (p.kind == NoiseKind::kSinusoidal && !(p.frequency > 0.0)) {
    fail_validation("noise.frequency must be > 0");
  }
  return p;
}

}  // namespace

std::string_view to_string(ControllerVariant v) {
  return v == ControllerVariant::kSaturated ? "saturated" : "remark3";
}

ControllerVariant parse_variant(std::string_view s) {
  if (s == "saturated") return ControllerVariant::kSaturated;
  if (s == "remark3") return ControllerVariant::kRemark3;
  fail_usage("controller.variant must be saturated or remark3, got '" +
             std::string(s) + "'");
}

VehicleState Scenario::initial_vehicle() const {
  if (pose) return *pose;
  const InitialErrors& e = errors.value();
  VehicleState veh;
  veh.v = initial_v;
  veh.psi = ref0.psi_r + e.xi - std::atan(d * initial_v);
  veh.x = ref0.p_r + e.e_p - d * std::cos(veh.psi);
  veh.y = ref0.q_r + e.e_q - d * std::sin(veh.psi);
  return veh;
}

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
  ScenarioConfig cfg;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      fail_usage("scenario line " + std::to_string(lineno) + ": expected key = value");
    }
    cfg.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_usage("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  bool known = false;
  for (const char* k : kKnownKeys) known |= (key == k);
  if (!known) fail_usage("unknown scenario key '" + key + "'");
  values_[key] = value;
}

void ScenarioConfig::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    fail_usage("override '" + std::string(assignment) + "' is not key=value");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

GainSet gains_from_config(const ScenarioConfig& cfg) {
  const Reader r(cfg.values());
  GainSet g;
  g.c0 = r.number("gains.c0");
  g.c1 = r.number("gains.c1");
  g.c2 = r.number("gains.c2");
  g.m = r.number("gains.m");
  g.n = r.number("gains.n");
  g.beta = r.number("gains.beta");
  g.rho = r.number("gains.rho");
  g.d = r.number("vehicle.d");
  g.kappa_max = r.number("path.kappa_max");
  return g;
}

Scenario ScenarioConfig::build() const {
  const Reader r(values_);
  Scenario sc;
  sc.d = r.number("vehicle.d");
  if (!(sc.d > 0.0)) fail_validation("vehicle.d must be > 0");
  sc.speed = build_speed(r);
  sc.path = build_path(r);
  sc.gains = gains_from_config(*this);
  sc.variant = parse_variant(r.text_or("controller.variant", "saturated"));

  sc.ref0.p_r = r.number_or("ref.p_r", 0.0);
  sc.ref0.q_r = r.number_or("ref.q_r", 0.0);
  sc.ref0.psi_r = r.number_or("ref.psi_r", 0.0);
  sc.ref0.s = sc.path.s0();

  const bool any_err = r.has("init.e_p") || r.has("init.e_q") || r.has("init.xi");
  const bool any_pose = r.has("init.x") || r.has("init.y") || r.has("init.psi");
  if (any_err == any_pose) {
    fail_validation("scenario must give exactly one of init.{e_p,e_q,xi} or "
                    "init.{x,y,psi}");
  }
  const double v0 = r.number_or("init.v", 0.0);
  if (any_err) {
    sc.errors = InitialErrors{r.number("init.e_p"), r.number("init.e_q"),
                              r.number("init.xi")};
    sc.initial_v = v0;
  } else {
    sc.pose = VehicleState{r.number("init.x"), r.number("init.y"),
                           r.number("init.psi"), v0};
  }

  sc.dt = r.number("sim.dt");
  sc.duration = r.number("sim.duration");
  if (!(sc.dt > 0.0)) fail_validation("sim.dt must be > 0");
  if (!(sc.duration >= sc.dt)) fail_validation("sim.duration must be >= sim.dt");
  sc.noise = build_noise(r, sc.speed);
  const double seed = r.number_or("sim.seed", 1.0);
  if (seed < 0.0 || seed != std::floor(seed)) {
    fail_usage("sim.seed must be a non-negative integer");
  }
  sc.seed = static_cast<std::uint64_t>(seed);
  return sc;
}

}  // namespace tpf
