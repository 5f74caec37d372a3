#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compare.hpp"
#include "gains.hpp"

namespace tpf {

struct ConditionEntry {
  std::string key;       // machine name, e.g. "cond0_c1"
  std::string group;     // condition family, e.g. "Cond0"
  std::string relation;  // printable inequality
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool informational = false;  // excluded from the verdict
  std::string note;
};

struct NInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  bool passed = false;  // every non-informational entry passes
  double beta_m = 0.0;
  double cond3_rhs = 0.0;
  double cond4_bound = 0.0;
  std::optional<NInterval> cond5_n_interval;  // N admissible for Cond5
  // Positive definiteness of the form bounding B from below. Diagnostic
  // only, not part of the verdict.
  bool b_certificate = false;
  double b_certificate_lhs = 0.0;
  double b_certificate_rhs = 0.0;
  std::optional<NInterval> b_certificate_n_interval;
  double lambda_bound = 0.0;                  // (3 + C1) kappa_max
  double lambda_bound_tight = 0.0;            // (1 + C1) kappa_max
  std::vector<std::string> notes;

  const ConditionEntry* find(const std::string& key) const;
  std::vector<std::string> failed_groups() const;

  std::string table() const;       // aligned human-readable text
  std::string key_values() const;  // key=value lines
};

// Evaluates every condition in order. Rejects non-positive constants.
ConditionReport check_conditions(const GainSet& g);

// Cond3 lower bound on C1; +inf when 1 - 2 rho kappa_max / C0 <= 0.
double cond3_rhs(double c0, double rho, double kappa_max);

// Cond4 lower bound on M; +inf when N <= 1/C0.
double cond4_bound(double c0, double c1, double n, double rho,
                   double kappa_max);

// Open interval of N satisfying Cond5 for given (C0, C2, rho).
std::optional<NInterval> cond5_n_interval(double c0, double c2, double rho);

// Open interval of N for which the 2x2 form bounding B from below is positive
// definite. Twice as strict as Cond5 and contained in its interval.
std::optional<NInterval> b_certificate_n_interval(double c0, double c2, double rho);

// Picks N, rho, beta, C1 and M for fixed (C0, C2). N is the midpoint of the
// B-certificate interval. Throws a validation
// error when the geometry admits no gain set.
GainSet synthesize_gains(double d, double kappa_max, double c0, double c2);

// Scenario-ready `gains.* = value` block.
std::string gains_block(const GainSet& g);

}  // namespace tpf
