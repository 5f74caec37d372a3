#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "errors.hpp"
#include "gain_synthesis.hpp"
#include "support/test_support.hpp"

using namespace tpf;

namespace {

GainSet baseline_gains() {
  GainSet g;
  g.c0 = 0.4; g.c1 = 0.7; g.c2 = 1.0; g.m = 1562; g.n = 3.0;
  g.beta = 0.96; g.rho = 0.2; g.d = 2.0; g.kappa_max = 0.02;
  return g;
}

bool passes(const ConditionReport& r, const std::string& key) {
  const auto* e = r.find(key);
  REQUIRE(e != nullptr);
  return e->pass;
}

}  // namespace

TEST_CASE("baseline gains: condition by condition") {
  const auto r = check_conditions(baseline_gains());
  CHECK(r.beta_m == doctest::Approx(0.48).epsilon(1e-15));
  CHECK(passes(r, "h1"));
  CHECK(passes(r, "rho_le_half"));
  CHECK(passes(r, "c1_lt_1"));
  CHECK_FALSE(passes(r, "cond0_c1"));
  CHECK_FALSE(passes(r, "cond0_beta"));
  CHECK(passes(r, "cond1"));
  CHECK(r.find("cond1")->lhs == doctest::Approx(0.24));
  CHECK_FALSE(passes(r, "cond2_left"));
  CHECK(r.find("cond2_left")->lhs == doctest::Approx(1.8));
  CHECK(r.find("cond2_left")->rhs == doctest::Approx(0.05));
  CHECK(r.find("cond2_left")->informational);
  CHECK(passes(r, "cond2_right"));
  CHECK(passes(r, "kappa_positivity"));
  CHECK(passes(r, "cond3"));
  CHECK(r.cond3_rhs == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(passes(r, "n_gt_inv_c0"));
  CHECK(passes(r, "cond4"));
  CHECK(passes(r, "cond5"));
  CHECK_FALSE(r.passed);

  const auto groups = r.failed_groups();
  CHECK(std::set<std::string>(groups.begin(), groups.end()) ==
        std::set<std::string>{"Cond0", "Cond2-left"});

  // The B-form certificate is reported separately and fails here.
  CHECK_FALSE(r.b_certificate);
}

TEST_CASE("Cond4 bound by hand") {
  // 2 (0.02 * 3.7 / 0.8 + 0.2)^2 / (0.7 * 0.5)
  const double hand = 2.0 * std::pow(0.02 * 3.7 / 0.8 + 0.2, 2) / (0.7 * 0.5);
  CHECK(cond4_bound(0.4, 0.7, 3.0, 0.2, 0.02) == doctest::Approx(hand).epsilon(1e-14));
  CHECK(hand == doctest::Approx(0.489).epsilon(1e-3));
  CHECK(std::isinf(cond4_bound(0.4, 0.7, 2.5, 0.2, 0.02)));
}

TEST_CASE("Cond5 interval against a bisection oracle") {
  const auto iv = cond5_n_interval(0.4, 1.0, 0.2);
  REQUIRE(iv.has_value());
  const double a = 4.0 * (1.0 - 2.0 * 0.04 / 3.0) / 0.2;
  CHECK(a == doctest::Approx(19.4667).epsilon(1e-5));
  const auto roots = tpf::testing::quadratic_roots_by_bisection(0.4, 1.0, a);
  CHECK(iv->lo == doctest::Approx(roots[0]).epsilon(1e-12));
  CHECK(iv->hi == doctest::Approx(roots[1]).epsilon(1e-12));
  CHECK(iv->lo == doctest::Approx(2.946).epsilon(1e-3));
  CHECK(iv->hi == doctest::Approx(16.52).epsilon(1e-3));

  const auto cert = b_certificate_n_interval(0.4, 1.0, 0.19);
  REQUIRE(cert.has_value());
  const auto croots = tpf::testing::quadratic_roots_by_bisection(
      0.4, 1.0, 2.0 * (1.0 - 2.0 * 0.19 * 0.19 / 3.0) / 0.19);
  CHECK(cert->lo == doctest::Approx(croots[0]).epsilon(1e-12));
  CHECK(cert->hi == doctest::Approx(croots[1]).epsilon(1e-12));
  // Twice as strict, so nested.
  const auto outer = cond5_n_interval(0.4, 1.0, 0.19);
  CHECK(outer->lo < cert->lo);
  CHECK(cert->hi < outer->hi);
  CHECK_FALSE(b_certificate_n_interval(0.4, 1.0, 0.2).has_value());
}

TEST_CASE("zero curvature bound") {
  GainSet g = baseline_gains();
  g.kappa_max = 0.0;
  g.c1 = 0.48;
  g.beta = 0.24;
  const auto r = check_conditions(g);
  CHECK_FALSE(passes(r, "cond2_left"));
  CHECK(passes(r, "kappa_positivity"));
  bool noted = false;
  for (const auto& n : r.notes) noted = noted || n.find("vacuously") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("checker rejects non-positive constants") {
  GainSet g = baseline_gains();
  g.c0 = 0.0;
  CHECK_THROWS_AS(check_conditions(g), Error);
  g = baseline_gains();
  g.m = -1.0;
  CHECK_THROWS_AS(check_conditions(g), Error);
}

TEST_CASE("synthesized gains for the baseline geometry") {
  const GainSet g = synthesize_gains(2.0, 0.02, 0.4, 1.0);
  CHECK(g.rho == doctest::Approx(0.5 * std::pow((std::sqrt(5.0) - 1.0) / 2.0, 2)).epsilon(1e-15));
  CHECK(g.beta == doctest::Approx(0.24).epsilon(1e-15));
  CHECK(g.c1 == doctest::Approx(0.48).epsilon(1e-15));
  const auto cert = b_certificate_n_interval(0.4, 1.0, g.rho);
  REQUIRE(cert.has_value());
  CHECK(g.n == doctest::Approx(0.5 * (cert->lo + cert->hi)).epsilon(1e-15));
  CHECK(g.m == doctest::Approx(1.5 * cond4_bound(0.4, g.c1, g.n, g.rho, 0.02)).epsilon(1e-15));

  const auto r = check_conditions(g);
  CHECK(r.passed);
  CHECK(r.b_certificate);
  for (const auto& e : r.entries) {
    if (!e.informational) CHECK_MESSAGE(e.pass, e.key);
  }
  // Deterministic.
  const GainSet again = synthesize_gains(2.0, 0.02, 0.4, 1.0);
  CHECK(again.n == g.n);
  CHECK(again.m == g.m);
}

TEST_CASE("synthesis refuses infeasible geometry") {
  CHECK_THROWS_AS(synthesize_gains(2.0, 0.5, 0.4, 1.0), Error);
  CHECK_THROWS_AS(synthesize_gains(2.0, 0.6, 0.4, 1.0), Error);
  CHECK_THROWS_AS(synthesize_gains(0.0, 0.02, 0.4, 1.0), Error);
  CHECK_THROWS_AS(synthesize_gains(2.0, 0.02, -0.4, 1.0), Error);
}

TEST_CASE("every synthesized set passes its checks") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int built = 0;
  for (int i = 0; i < 300; ++i) {
    const double d = 0.5 + 3.0 * u(rng);
    const double k = 0.95 * u(rng) / d;
    const double c0 = 0.05 + 2.0 * u(rng);
    const double c2 = 0.05 + 3.0 * u(rng);
    GainSet g;
    try {
      g = synthesize_gains(d, k, c0, c2);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kValidation);
      continue;
    }
    ++built;
    const auto r = check_conditions(g);
    CHECK(r.passed);
    CHECK(r.b_certificate);
    CHECK(g.c1 < 1.0);
  }
  CHECK(built > 100);
}

TEST_CASE("steering budget is positive exactly when the geometry admits it") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double d = 0.1 + 5.0 * u(rng);
    const double k = 2.0 * u(rng) / d;
    CHECK((steering_budget(d, k) > 0.0) == (d * k < 1.0));
  }
}

TEST_CASE("raising the curvature bound never rescues Cond3") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double c0 = 0.05 + u(rng), rho = 0.5 * u(rng) + 1e-3, c1 = u(rng);
    const double k1 = 0.5 * u(rng);
    const double k2 = k1 + 0.5 * u(rng);
    const bool pass1 = c1 > cond3_rhs(c0, rho, k1);
    const bool pass2 = c1 > cond3_rhs(c0, rho, k2);
    if (!pass1) CHECK_FALSE(pass2);
  }
}

TEST_CASE("Cond4 is the determinant test of its quadratic form") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int i = 0; i < 20000; ++i) {
    GainSet g = baseline_gains();
    g.c0 = 0.1 + u(rng);
    g.c1 = 0.01 + 0.98 * u(rng);
    g.rho = 0.01 + 0.49 * u(rng);
    g.kappa_max = 0.1 * u(rng);
    g.n = 1.0 / g.c0 + 10.0 * u(rng) + 1e-3;
    g.m = 2.0 * u(rng);
    const double off = -g.kappa_max * (3.0 + g.c1) / (2.0 * g.c0) - g.rho;
    const double a11 = g.c1 * g.m, a22 = (g.n - 1.0 / g.c0) / 2.0;
    const double det = a11 * a22 - off * off;
    const bool form_pd = a11 > 0.0 && det > 0.0;
    const double margin = std::abs(det) / (a11 * a22 + off * off);
    if (margin < 1e-9) continue;  // too close to call in floating point
    const auto r = check_conditions(g);
    CHECK(r.find("cond4")->pass == form_pd);
    ++agree;
  }
  CHECK(agree > 19000);
}

TEST_CASE("report text forms") {
  const auto r = check_conditions(baseline_gains());
  const auto table = r.table();
  CHECK(table.find("cond0_c1") != std::string::npos);
  CHECK(table.find("FAIL") != std::string::npos);
  CHECK(table.find("verdict: FAIL") != std::string::npos);
  const auto kv = r.key_values();
  CHECK(kv.find("cond0_c1.pass=0\n") != std::string::npos);
  CHECK(kv.find("cond1.pass=1\n") != std::string::npos);
  CHECK(kv.find("verdict=fail\n") != std::string::npos);

  const auto block = gains_block(synthesize_gains(2.0, 0.02, 0.4, 1.0));
  CHECK(block.find("gains.rho = ") != std::string::npos);
  CHECK(block.find("vehicle.d = 2\n") != std::string::npos);
}
