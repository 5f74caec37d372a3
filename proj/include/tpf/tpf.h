/* tpf.h - C interface to the target-point path-following library.
 *
 * All functions return a tpf_status. On failure, tpf_last_error() returns a
 * message for the calling thread that stays valid until the next call into
 * the library from that thread. Handles are owned by the caller and released
 * with the matching *_free function; passing NULL to a free function is a
 * no-op.
 */
#ifndef TPF_TPF_H
#define TPF_TPF_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TPF_BUILDING_LIBRARY)
#    define TPF_API __declspec(dllexport)
#  else
#    define TPF_API __declspec(dllimport)
#  endif
#else
#  define TPF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpf_status {
  TPF_OK = 0,
  TPF_ERR_USAGE = 1,      /* malformed input, unknown key, unreadable file */
  TPF_ERR_VALIDATION = 2, /* failed precondition or gain condition */
  TPF_ERR_NUMERICAL = 3   /* integration aborted */
} tpf_status;

typedef struct tpf_scenario tpf_scenario;
typedef struct tpf_run tpf_run;
typedef struct tpf_report tpf_report;

TPF_API const char* tpf_version(void);
TPF_API const char* tpf_last_error(void);

/* Scenarios: flat `key = value` text with dotted keys. Overrides use the
 * same keys ("sim.dt=0.0005") and replace earlier values. */
TPF_API tpf_status tpf_scenario_load(const char* path, tpf_scenario** out);
TPF_API tpf_status tpf_scenario_parse(const char* text, tpf_scenario** out);
TPF_API tpf_status tpf_scenario_override(tpf_scenario* sc, const char* assignment);
TPF_API void tpf_scenario_free(tpf_scenario* sc);

/* Runs the scenario. On TPF_ERR_NUMERICAL *out still receives the partial
 * run so that its log and summary can be inspected. */
TPF_API tpf_status tpf_simulate(const tpf_scenario* sc, tpf_run** out);
TPF_API tpf_status tpf_run_write_csv(const tpf_run* run, const char* path);
/* `key = value` lines; the pointer lives as long as the run. */
TPF_API const char* tpf_run_summary(const tpf_run* run);
TPF_API size_t tpf_run_row_count(const tpf_run* run);
/* Returns 0 and stores the time in *t when the run converged, 1 otherwise. */
TPF_API int tpf_run_convergence_time(const tpf_run* run, double* t);
TPF_API void tpf_run_free(tpf_run* run);

/* Gain conditions of the scenario's gain block. The report is produced even
 * when conditions fail; check tpf_report_passed. */
TPF_API tpf_status tpf_gains_check(const tpf_scenario* sc, tpf_report** out);
/* Report text is a gain block that can be pasted into a scenario file.
 * Infeasible inputs return TPF_ERR_VALIDATION. */
TPF_API tpf_status tpf_gains_synthesize(double d, double kappa_max, double c0,
                                        double c2, tpf_report** out);

/* Sign sweep of the decrease bounds over points x points samples with
 * |y| <= extent and |xi| < 2 rho. */
TPF_API tpf_status tpf_lyapunov_grid(const tpf_scenario* sc, int points,
                                     double extent, tpf_report** out);
/* Post-hoc decrease check on a CSV log written by tpf_run_write_csv. Gains
 * and controller variant come from the log trailer. */
TPF_API tpf_status tpf_lyapunov_trace(const char* log_path, tpf_report** out);

TPF_API int tpf_report_passed(const tpf_report* report);
TPF_API const char* tpf_report_text(const tpf_report* report);
TPF_API void tpf_report_free(tpf_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TPF_TPF_H */
