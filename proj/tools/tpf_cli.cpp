// tpf: command-line front end over the C interface.
//
//   tpf simulate --scenario run.cfg --out run.csv [--override key=value]...
//   tpf gains check --scenario run.cfg
//   tpf gains synth --d 2 --kappa-max 0.02 --c0 0.4 --c2 1
//   tpf lyapunov grid --scenario run.cfg [--points 401] [--extent 10]
//   tpf lyapunov trace --log run.csv
//
// Exit codes: 0 ok, 1 usage, 2 validation, 3 numerical abort.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpf/tpf.h"

namespace {

struct ScenarioDeleter {
  void operator()(tpf_scenario* p) const { tpf_scenario_free(p); }
};
struct RunDeleter {
  void operator()(tpf_run* p) const { tpf_run_free(p); }
};
struct ReportDeleter {
  void operator()(tpf_report* p) const { tpf_report_free(p); }
};

using ScenarioPtr = std::unique_ptr<tpf_scenario, ScenarioDeleter>;
using RunPtr = std::unique_ptr<tpf_run, RunDeleter>;
using ReportPtr = std::unique_ptr<tpf_report, ReportDeleter>;

int report_error(tpf_status s, const std::string& context) {
  std::cerr << "tpf: " << context << ": " << tpf_last_error() << '\n';
  return static_cast<int>(s);
}

int load_scenario(const std::string& path, const std::vector<std::string>& overrides,
                  ScenarioPtr& out) {
  tpf_scenario* raw = nullptr;
  tpf_status s = tpf_scenario_load(path.c_str(), &raw);
  out.reset(raw);
  if (s != TPF_OK) return report_error(s, "scenario");
  for (const auto& o : overrides) {
    s = tpf_scenario_override(out.get(), o.c_str());
    if (s != TPF_OK) return report_error(s, "override '" + o + "'");
  }
  return 0;
}

int cmd_simulate(const std::string& scenario, const std::string& out,
                 const std::vector<std::string>& overrides) {
  ScenarioPtr sc;
  if (int rc = load_scenario(scenario, overrides, sc)) return rc;

  tpf_run* raw = nullptr;
  const tpf_status s = tpf_simulate(sc.get(), &raw);
  RunPtr run(raw);
  if (!run) return report_error(s, "simulate");

  std::cout << tpf_run_summary(run.get());
  const tpf_status ws = tpf_run_write_csv(run.get(), out.c_str());
  if (ws != TPF_OK) return report_error(ws, "write");
  std::cout << "wrote " << out << " (" << tpf_run_row_count(run.get()) << " rows)\n";
  if (s != TPF_OK) return report_error(s, "simulate");
  return 0;
}

int print_report(tpf_status s, tpf_report* raw, const std::string& context) {
  ReportPtr rep(raw);
  if (s != TPF_OK) return report_error(s, context);
  std::cout << tpf_report_text(rep.get());
  return tpf_report_passed(rep.get()) ? 0 : static_cast<int>(TPF_ERR_VALIDATION);
}

int cmd_gains_check(const std::string& scenario) {
  ScenarioPtr sc;
  if (int rc = load_scenario(scenario, {}, sc)) return rc;
  tpf_report* raw = nullptr;
  const tpf_status s = tpf_gains_check(sc.get(), &raw);
  return print_report(s, raw, "gains check");
}

int cmd_gains_synth(double d, double kappa_max, double c0, double c2) {
  tpf_report* raw = nullptr;
  const tpf_status s = tpf_gains_synthesize(d, kappa_max, c0, c2, &raw);
  return print_report(s, raw, "gains synth");
}

int cmd_lyapunov_grid(const std::string& scenario, int points, double extent) {
  ScenarioPtr sc;
  if (int rc = load_scenario(scenario, {}, sc)) return rc;
  tpf_report* raw = nullptr;
  const tpf_status s = tpf_lyapunov_grid(sc.get(), points, extent, &raw);
  return print_report(s, raw, "lyapunov grid");
}

int cmd_lyapunov_trace(const std::string& log) {
  tpf_report* raw = nullptr;
  const tpf_status s = tpf_lyapunov_trace(log.c_str(), &raw);
  return print_report(s, raw, "lyapunov trace");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Target-point path-following simulator and gain tools", "tpf"};
  app.set_version_flag("--version", std::string("tpf ") + tpf_version());
  app.require_subcommand(1);

  std::string scenario, out, log;
  std::vector<std::string> overrides;
  double d = 0.0, kappa_max = 0.0, c0 = 0.0, c2 = 0.0, extent = 10.0;
  int points = 401;

  auto* sim = app.add_subcommand("simulate", "Run a scenario and write its trajectory CSV");
  sim->add_option("--scenario", scenario, "Scenario file")->required();
  sim->add_option("--out", out, "Output CSV path")->required();
  sim->add_option("--override", overrides, "key=value, applied after the file")
      ->take_all()
      ->allow_extra_args(false);

  auto* gains = app.add_subcommand("gains", "Check or synthesize controller gains");
  gains->require_subcommand(1);
  auto* check = gains->add_subcommand("check", "Evaluate every gain condition");
  check->add_option("--scenario", scenario, "Scenario file")->required();
  auto* synth = gains->add_subcommand("synth", "Synthesize a compliant gain block");
  synth->add_option("--d", d, "Target point distance [m]")->required();
  synth->add_option("--kappa-max", kappa_max, "Path curvature bound [1/m]")->required();
  synth->add_option("--c0", c0, "C0 > 0")->required();
  synth->add_option("--c2", c2, "C2 > 0")->required();

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov function checks");
  lyap->require_subcommand(1);
  auto* grid = lyap->add_subcommand("grid", "Sign sweep of the decrease bounds");
  grid->add_option("--scenario", scenario, "Scenario file")->required();
  grid->add_option("--points", points, "Samples per axis (odd)");
  grid->add_option("--extent", extent, "Half-width of the y range");
  auto* trace = lyap->add_subcommand("trace", "Check decrease along a logged run");
  trace->add_option("--log", log, "Trajectory CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(TPF_ERR_USAGE);
  }

  if (sim->parsed()) return cmd_simulate(scenario, out, overrides);
  if (check->parsed()) return cmd_gains_check(scenario);
  if (synth->parsed()) return cmd_gains_synth(d, kappa_max, c0, c2);
  if (grid->parsed()) return cmd_lyapunov_grid(scenario, points, extent);
  if (trace->parsed()) return cmd_lyapunov_trace(log);
  std::cerr << "tpf: no command given\n";
  return static_cast<int>(TPF_ERR_USAGE);
}
