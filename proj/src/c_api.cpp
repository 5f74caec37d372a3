#include "tpf/tpf.h"

#include <exception>
#include <fstream>
#include <new>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "gain_synthesis.hpp"
#include "lyapunov.hpp"
#include "scenario.hpp"
#include "simulator.hpp"
#include "trajectory_log.hpp"

struct tpf_scenario {
  tpf::ScenarioConfig cfg;
};

struct tpf_run {
  tpf::RunResult result;
  std::string summary;
};

struct tpf_report {
  bool passed = false;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

tpf_status to_status(tpf::ErrorKind k) {
  switch (k) {
    case tpf::ErrorKind::kUsage: return TPF_ERR_USAGE;
    case tpf::ErrorKind::kValidation: return TPF_ERR_VALIDATION;
    case tpf::ErrorKind::kNumerical: return TPF_ERR_NUMERICAL;
  }
  return TPF_ERR_USAGE;
}

tpf_status set_error(tpf_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
tpf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const tpf::Error& e) {
    return set_error(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(TPF_ERR_NUMERICAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(TPF_ERR_NUMERICAL, e.what());
  }
}

tpf_status null_arg(const char* name) {
  return set_error(TPF_ERR_USAGE, std::string("null argument: ") + name);
}

// Only the gain block and variant are read back from a log trailer.
bool is_gain_key(std::string_view k) {
  return k.starts_with("gains.") || k == "vehicle.d" || k == "path.kappa_max";
}

}  // namespace

extern "C" {

const char* tpf_version(void) { return "1.0.0"; }

const char* tpf_last_error(void) { return g_last_error.c_str(); }

tpf_status tpf_scenario_load(const char* path, tpf_scenario** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new tpf_scenario{tpf::ScenarioConfig::load(path)};
    return TPF_OK;
  });
}

tpf_status tpf_scenario_parse(const char* text, tpf_scenario** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new tpf_scenario{tpf::ScenarioConfig::parse(text)};
    return TPF_OK;
  });
}

tpf_status tpf_scenario_override(tpf_scenario* sc, const char* assignment) {
  if (!sc) return null_arg("scenario");
  if (!assignment) return null_arg("assignment");
  return guarded([&] {
    sc->cfg.apply_override(assignment);
    return TPF_OK;
  });
}

void tpf_scenario_free(tpf_scenario* sc) { delete sc; }

tpf_status tpf_simulate(const tpf_scenario* sc, tpf_run** out) {
  if (!sc) return null_arg("scenario");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const tpf::Scenario scenario = sc->cfg.build();
    auto* run = new tpf_run{tpf::run(scenario), {}};
    run->summary = tpf::summary_text(run->result);
    *out = run;
    if (run->result.summary.aborted) {
      return set_error(TPF_ERR_NUMERICAL,
                       "integration aborted: " + run->result.summary.abort_message);
    }
    return TPF_OK;
  });
}

tpf_status tpf_run_write_csv(const tpf_run* run, const char* path) {
  if (!run) return null_arg("run");
  if (!path) return null_arg("path");
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) return set_error(TPF_ERR_USAGE, std::string("cannot open ") + path + " for writing");
    run->result.log.write_csv(os);
    os.flush();
    if (!os) return set_error(TPF_ERR_USAGE, std::string("write failed: ") + path);
    return TPF_OK;
  });
}

const char* tpf_run_summary(const tpf_run* run) {
  return run ? run->summary.c_str() : "";
}

size_t tpf_run_row_count(const tpf_run* run) {
  return run ? run->result.log.rows.size() : 0;
}

int tpf_run_convergence_time(const tpf_run* run, double* t) {
  if (!run || !run->result.summary.t_conv) return 1;
  if (t) *t = *run->result.summary.t_conv;
  return 0;
}

void tpf_run_free(tpf_run* run) { delete run; }

tpf_status tpf_gains_check(const tpf_scenario* sc, tpf_report** out) {
  if (!sc) return null_arg("scenario");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto rep = tpf::check_conditions(tpf::gains_from_config(sc->cfg));
    *out = new tpf_report{rep.passed, rep.table() + "\n" + rep.key_values()};
    return TPF_OK;
  });
}

tpf_status tpf_gains_synthesize(double d, double kappa_max, double c0, double c2,
                                tpf_report** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto g = tpf::synthesize_gains(d, kappa_max, c0, c2);
    *out = new tpf_report{true, tpf::gains_block(g)};
    return TPF_OK;
  });
}

tpf_status tpf_lyapunov_grid(const tpf_scenario* sc, int points, double extent,
                             tpf_report** out) {
  if (!sc) return null_arg("scenario");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    tpf::GridOptions opt;
    opt.points = points;
    opt.y_extent = extent;
    const auto r = tpf::positivity_grid(tpf::gains_from_config(sc->cfg), opt);
    *out = new tpf_report{r.passed(), r.text()};
    return TPF_OK;
  });
}

tpf_status tpf_lyapunov_trace(const char* log_path, tpf_report** out) {
  if (!log_path) return null_arg("log_path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    std::ifstream is(log_path, std::ios::binary);
    if (!is) tpf::fail_usage(std::string("cannot open log ") + log_path);
    const auto log = tpf::TrajectoryLog::read_csv(is);

    tpf::ScenarioConfig cfg;
    for (const auto& [k, v] : log.metadata) {
      if (is_gain_key(k)) cfg.set(k, v);
    }
    for (const char* key : {"vehicle.d", "path.kappa_max", "gains.c0", "gains.c1",
                            "gains.c2", "gains.m", "gains.n", "gains.beta", "gains.rho"}) {
      if (!cfg.has(key)) tpf::fail_usage(std::string("log trailer lacks ") + key);
    }
    const auto variant_text = log.meta("controller.variant");
    if (!variant_text) tpf::fail_usage("log trailer lacks controller.variant");
    const auto variant = tpf::parse_variant(*variant_text);

    const auto rep = tpf::vdot_check(log, tpf::gains_from_config(cfg), variant);
    *out = new tpf_report{rep.decrease_verified(), rep.text()};
    return TPF_OK;
  });
}

int tpf_report_passed(const tpf_report* report) {
  return report && report->passed ? 1 : 0;
}

const char* tpf_report_text(const tpf_report* report) {
  return report ? report->text.c_str() : "";
}

void tpf_report_free(tpf_report* report) { delete report; }

}  // extern "C"
