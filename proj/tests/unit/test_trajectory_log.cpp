#include <doctest.h>

#include <sstream>
#include <string>

#include "errors.hpp"
#include "trajectory_log.hpp"

using namespace tpf;

namespace {

TrajectoryLog sample_log() {
  TrajectoryLog log;
  log.dt = 0.5;
  for (int k = 0; k < 3; ++k) {
    LogRow r{};
    r.t = 0.5 * k;
    r.x = 1.0 / 3.0 + k;
    r.V = 1e-300;
    r.Vdot = -0.1;
    log.rows.push_back(r);
  }
  log.metadata = {{"a.b", "1"}, {"gains.rho", "0.2"}, {"a.b", "2"}};
  return log;
}

ErrorKind read_kind(const std::string& text) {
  std::istringstream is(text);
  try {
    TrajectoryLog::read_csv(is);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted a malformed log");
  return ErrorKind::kValidation;
}

}  // namespace

TEST_CASE("header lists every column once") {
  const std::string h = csv_header();
  CHECK(h.rfind("t,x,y,psi,v,p,q,theta,p_r,q_r,psi_r,s,", 0) == 0);
  CHECK(h.find(",e_p,e_q,xi,y1,y2,u1,u2,u,omega,v_d,V,Vdot") != std::string::npos);
}

TEST_CASE("round trip is exact") {
  const auto log = sample_log();
  std::ostringstream os;
  log.write_csv(os);
  const std::string text = os.str();
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("# a.b = 2\n") != std::string::npos);

  std::istringstream is(text);
  const auto back = TrajectoryLog::read_csv(is);
  REQUIRE(back.rows.size() == 3);
  CHECK(back.rows[1].x == log.rows[1].x);
  CHECK(back.rows[2].V == 1e-300);
  CHECK(back.dt == 0.5);
  CHECK(back.meta("a.b") == std::optional<std::string>("2"));
  CHECK(back.meta("gains.rho") == std::optional<std::string>("0.2"));
  CHECK_FALSE(back.meta("missing").has_value());
}

TEST_CASE("malformed logs are usage errors") {
  std::ostringstream os;
  sample_log().write_csv(os);
  const std::string good = os.str();
  const std::string header = csv_header() + "\n";

  CHECK(read_kind("") == ErrorKind::kUsage);
  CHECK(read_kind("t,x\n0,1\n") == ErrorKind::kUsage);
  // Truncated mid-row.
  CHECK(read_kind(good.substr(0, good.find('\n', header.size()) + 20)) == ErrorKind::kUsage);
  // Single row.
  CHECK(read_kind(good.substr(0, good.find('\n', header.size()) + 1)) == ErrorKind::kUsage);
  std::string bad = good;
  bad.replace(bad.find("0.33333333333333331"), 19, "nan");
  CHECK(read_kind(bad) == ErrorKind::kUsage);
  bad = good;
  bad.replace(bad.find("\n0.5,") + 1, 3, "0.7");
  CHECK(read_kind(bad) == ErrorKind::kUsage);
  CHECK(read_kind(good + std::string("3,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n")) ==
        ErrorKind::kUsage);
}
