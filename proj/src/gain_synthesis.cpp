#include "gain_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "numfmt.hpp"

namespace tpf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    fail_validation(std::string("gain constant ") + name +
                    " must be finite and > 0");
  }
}

ConditionEntry make(std::string key, std::string group, std::string relation,
                    double lhs, double rhs, bool pass) {
  ConditionEntry e;
  e.key = std::move(key);
  e.group = std::move(group);
  e.relation = std::move(relation);
  e.lhs = lhs;
  e.rhs = rhs;
  e.pass = pass;
  return e;
}

}  // namespace

double cond3_rhs(double c0, double rho, double kappa_max) {
  const double denom = 1.0 - 2.0 * rho * kappa_max / c0;
  if (!(denom > 0.0)) return kInf;
  return (6.0 * kappa_max / c0 * rho + 2.0 * rho * rho) / denom;
}

double cond4_bound(double c0, double c1, double n, double rho,
                   double kappa_max) {
  const double excess = n - 1.0 / c0;
  if (!(excess > 0.0)) return kInf;
  const double off = kappa_max * (3.0 + c1) / (2.0 * c0) + rho;
  return 2.0 * off * off / (c1 * excess);
}

namespace {

// N with C2 N^2 - a (N - 1/C0) < 0, a = k (1 - 2 rho^2/3) / rho.
std::optional<NInterval> quadratic_n_interval(double c0, double c2, double rho,
                                              double k) {
  const double a = k * (1.0 - 2.0 * rho * rho / 3.0) / rho;
  const double disc = a * a - 4.0 * c2 * a / c0;
  if (!(a > 0.0) || !(disc > 0.0)) return std::nullopt;
  const double root = std::sqrt(disc);
  // Product of roots is a/(C2 C0); recover the small root from it to avoid
  // cancellation.
  const double hi = (a + root) / (2.0 * c2);
  const double lo = a / (c2 * c0) / hi;
  return NInterval{lo, hi};
}

}  // namespace

std::optional<NInterval> cond5_n_interval(double c0, double c2, double rho) {
  return quadratic_n_interval(c0, c2, rho, 4.0);
}

std::optional<NInterval> b_certificate_n_interval(double c0, double c2, double rho) {
  return quadratic_n_interval(c0, c2, rho, 2.0);
}

const ConditionEntry* ConditionReport::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::vector<std::string> ConditionReport::failed_groups() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (!e.pass && std::find(out.begin(), out.end(), e.group) == out.end()) {
      out.push_back(e.group);
    }
  }
  return out;
}

ConditionReport check_conditions(const GainSet& g) {
  require_positive(g.c0, "C0");
  require_positive(g.c1, "C1");
  require_positive(g.c2, "C2");
  require_positive(g.m, "M");
  require_positive(g.n, "N");
  require_positive(g.beta, "beta");
  require_positive(g.rho, "rho");
  require_positive(g.d, "d");
  if (!(g.kappa_max >= 0.0) || !std::isfinite(g.kappa_max)) {
    fail_validation("kappa_max must be finite and >= 0");
  }

  ConditionReport r;
  const double k = g.kappa_max;
  r.beta_m = steering_budget(g.d, k);
  r.cond3_rhs = cond3_rhs(g.c0, g.rho, k);
  r.cond4_bound = cond4_bound(g.c0, g.c1, g.n, g.rho, k);
  r.cond5_n_interval = cond5_n_interval(g.c0, g.c2, g.rho);
  r.b_certificate_n_interval = b_certificate_n_interval(g.c0, g.c2, g.rho);
  r.lambda_bound = (3.0 + g.c1) * k;
  r.lambda_bound_tight = (1.0 + g.c1) * k;

  auto& E = r.entries;
  E.push_back(make("h1", "H1", "d*kappa_max < 1", g.d * k, 1.0,
                   less_with_margin(g.d * k, 1.0)));
  E.push_back(make("rho_le_half", "rho<=1/2", "rho <= 1/2", g.rho, 0.5,
                   less_equal_with_margin(g.rho, 0.5)));
  E.push_back(make("c1_lt_1", "C1<1", "C1 < 1", g.c1, 1.0,
                   less_with_margin(g.c1, 1.0)));
  E.back().note = "keeps u = v_d (1 + u1) strictly positive";
  E.push_back(make("cond0_c1", "Cond0", "C1 <= d*beta_M/2", g.c1,
                   g.d * r.beta_m / 2.0,
                   less_equal_with_margin(g.c1, g.d * r.beta_m / 2.0)));
  E.push_back(make("cond0_beta", "Cond0", "beta <= beta_M/2", g.beta,
                   r.beta_m / 2.0,
                   less_equal_with_margin(g.beta, r.beta_m / 2.0)));
  E.push_back(make("cond1", "Cond1", "3*rho*C0 <= beta", 3.0 * g.rho * g.c0,
                   g.beta, less_equal_with_margin(3.0 * g.rho * g.c0, g.beta)));
  E.push_back(make("cond2_left", "Cond2-left", "9*rho < kappa_max/C0",
                   9.0 * g.rho, k / g.c0, less_with_margin(9.0 * g.rho, k / g.c0)));
  E.back().informational = true;
  E.back().note =
      "literal reading; not implied by Cond1 and kappa-positivity, excluded from verdict";
  E.push_back(make("cond2_right", "Cond2-right", "kappa_max/C0 < 1/(2*rho)",
                   k / g.c0, 1.0 / (2.0 * g.rho),
                   less_with_margin(k / g.c0, 1.0 / (2.0 * g.rho))));
  E.push_back(make("kappa_positivity", "kappa-positivity", "2*kappa_max*rho/C0 < 1",
                   2.0 * k * g.rho / g.c0, 1.0,
                   less_with_margin(2.0 * k * g.rho / g.c0, 1.0)));
  E.push_back(make("cond3", "Cond3", "C1 > Cond3 bound", g.c1, r.cond3_rhs,
                   less_with_margin(r.cond3_rhs, g.c1)));
  E.push_back(make("n_gt_inv_c0", "N>1/C0", "N > 1/C0", g.n, 1.0 / g.c0,
                   less_with_margin(1.0 / g.c0, g.n)));
  E.push_back(make("cond4", "Cond4", "M > Cond4 bound", g.m, r.cond4_bound,
                   less_with_margin(r.cond4_bound, g.m)));
  {
    const double lhs = (1.0 - 2.0 * g.rho * g.rho / 3.0) / g.rho;
    const double excess = g.n - 1.0 / g.c0;
    const double rhs =
        excess > 0.0 ? g.c2 * g.n * g.n / (4.0 * excess) : kInf;
    E.push_back(make("cond5", "Cond5", "(1-2rho^2/3)/rho > C2 N^2/(4(N-1/C0))",
                     lhs, rhs, less_with_margin(rhs, lhs)));
  }
  {
    const double excess = g.n - 1.0 / g.c0;
    r.b_certificate_lhs = (1.0 - 2.0 * g.rho * g.rho / 3.0) / g.rho;
    r.b_certificate_rhs = excess > 0.0 ? g.c2 * g.n * g.n / (2.0 * excess) : kInf;
    r.b_certificate = less_with_margin(r.b_certificate_rhs, r.b_certificate_lhs);
  }

  if (k == 0.0) {
    r.notes.push_back(
        "kappa_max = 0: Cond2-left reads 9*rho < 0 and fails literally; "
        "kappa-positivity (2*kappa_max*rho/C0 < 1) holds vacuously");
  }
  r.notes.push_back("lambda bound used by the conditions (3+C1)*kappa_max = " +
                    format_general(r.lambda_bound, 10) +
                    "; tighter |1+u1|*kappa_max bound (1+C1)*kappa_max = " +
                    format_general(r.lambda_bound_tight, 10));

  r.passed = std::all_of(E.begin(), E.end(), [](const ConditionEntry& e) {
    return e.pass || e.informational;
  });
  return r;
}

std::string ConditionReport::table() const {
  std::ostringstream os;
  os << pad_right("condition", 18) << pad_right("relation", 40)
     << pad_right("lhs", 22) << pad_right("rhs", 22) << "result\n";
  for (const auto& e : entries) {
    std::string verdict = e.pass ? "pass" : "FAIL";
    if (e.informational) verdict += " (informational)";
    os << pad_right(e.key, 18) << pad_right(e.relation, 40)
       << pad_right(format_general(e.lhs, 12), 22)
       << pad_right(format_general(e.rhs, 12), 22) << verdict << '\n';
  }
  os << "beta_M = " << format_general(beta_m, 12) << '\n';
  if (cond5_n_interval) {
    os << "Cond5 admissible N interval = (" << format_general(cond5_n_interval->lo, 12)
       << ", " << format_general(cond5_n_interval->hi, 12) << ")\n";
  } else {
    os << "Cond5 admissible N interval = empty\n";
  }
  if (b_certificate_n_interval) {
    os << "B-certificate admissible N interval = ("
       << format_general(b_certificate_n_interval->lo, 12) << ", "
       << format_general(b_certificate_n_interval->hi, 12) << ")\n";
  } else {
    os << "B-certificate admissible N interval = empty\n";
  }
  os << "B certificate (1-2rho^2/3)/rho > C2 N^2/(2(N-1/C0)): "
     << format_general(b_certificate_lhs, 12) << " vs "
     << format_general(b_certificate_rhs, 12) << ", "
     << (b_certificate ? "holds" : "does not hold") << " (diagnostic)\n";
  for (const auto& n : notes) os << "note: " << n << '\n';
  os << "verdict: " << (passed ? "pass" : "FAIL") << '\n';
  return os.str();
}

std::string ConditionReport::key_values() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << e.key << ".lhs=" << format_general(e.lhs) << '\n'
       << e.key << ".rhs=" << format_general(e.rhs) << '\n'
       << e.key << ".pass=" << (e.pass ? 1 : 0) << '\n'
       << e.key << ".informational=" << (e.informational ? 1 : 0) << '\n';
  }
  os << "beta_m=" << format_general(beta_m) << '\n';
  os << "cond3_rhs=" << format_general(cond3_rhs) << '\n';
  os << "cond4_bound=" << format_general(cond4_bound) << '\n';
  if (cond5_n_interval) {
    os << "cond5_n_lo=" << format_general(cond5_n_interval->lo) << '\n'
       << "cond5_n_hi=" << format_general(cond5_n_interval->hi) << '\n';
  }
  os << "b_certificate=" << (b_certificate ? 1 : 0) << '\n';
  if (b_certificate_n_interval) {
    os << "b_certificate_n_lo=" << format_general(b_certificate_n_interval->lo) << '\n'
       << "b_certificate_n_hi=" << format_general(b_certificate_n_interval->hi) << '\n';
  }
  os << "lambda_bound=" << format_general(lambda_bound) << '\n';
  os << "lambda_bound_tight=" << format_general(lambda_bound_tight) << '\n';
  os << "verdict=" << (passed ? "pass" : "fail") << '\n';
  return os.str();
}

GainSet synthesize_gains(double d, double kappa_max, double c0, double c2) {
  if (!(d > 0.0)) fail_validation("d must be > 0");
  if (!(kappa_max >= 0.0)) fail_validation("kappa_max must be >= 0");
  if (!(c0 > 0.0) || !(c2 > 0.0)) fail_validation("C0 and C2 must be > 0");
  if (!less_with_margin(d * kappa_max, 1.0)) {
    fail_validation("infeasible: d*kappa_max = " + format_general(d * kappa_max, 12) +
                    " violates H1 (d*kappa_max < 1)");
  }

  GainSet g;
  g.d = d;
  g.kappa_max = kappa_max;
  g.c0 = c0;
  g.c2 = c2;
  const double beta_m = steering_budget(d, kappa_max);
  g.beta = beta_m / 2.0;
  g.c1 = std::min(d * beta_m / 2.0, 0.99);

  auto rho_feasible = [&](double rho) {
    if (!less_with_margin(2.0 * kappa_max * rho / c0, 1.0)) return false;
    if (!less_equal_with_margin(3.0 * rho * c0, g.beta)) return false;
    if (!less_with_margin(cond3_rhs(c0, rho, kappa_max), g.c1)) return false;
    // The B certificate admits some N iff its minimum over N > 1/C0, reached
    // at N = 2/C0, is below the left-hand side. This also leaves room for Cond5.
    const double lhs = (1.0 - 2.0 * rho * rho / 3.0) / rho;
    return less_with_margin(2.0 * c2 / c0, lhs);
  };

  // Golden-ratio shrink from the largest admissible rho.
  const double shrink = (std::sqrt(5.0) - 1.0) / 2.0;
  double rho = 0.5;
  int iter = 0;
  while (!rho_feasible(rho)) {
    rho *= shrink;
    if (++iter > 200) {
      fail_validation("infeasible: no rho in (0, 1/2] satisfies kappa-positivity, Cond1, "
                      "Cond3 and the B certificate for this geometry");
    }
  }
  g.rho = rho;

  const auto interval = b_certificate_n_interval(c0, c2, rho);
  if (!interval) fail_validation("infeasible: no N makes B positive definite");
  g.n = 0.5 * (interval->lo + interval->hi);
  g.m = 1.5 * cond4_bound(c0, g.c1, g.n, rho, kappa_max);

  const ConditionReport report = check_conditions(g);
  if (!report.passed || !report.b_certificate) {
    fail_validation("synthesized gain set does not pass its own checks:\n" +
                    report.table());
  }
  return g;
}

std::string gains_block(const GainSet& g) {
  std::ostringstream os;
  os << "vehicle.d = " << format_general(g.d) << '\n'
     << "path.kappa_max = " << format_general(g.kappa_max) << '\n'
     << "gains.c0 = " << format_general(g.c0) << '\n'
     << "gains.c1 = " << format_general(g.c1) << '\n'
     << "gains.c2 = " << format_general(g.c2) << '\n'
     << "gains.m = " << format_general(g.m) << '\n'
     << "gains.n = " << format_general(g.n) << '\n'
     << "gains.beta = " << format_general(g.beta) << '\n'
     << "gains.rho = " << format_general(g.rho) << '\n';
  return os.str();
}

}  // namespace tpf
