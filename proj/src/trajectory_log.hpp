#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tpf {

// One logged time step. Vdot is the Lyapunov rate in rescaled time
// (physical-time rate divided by v_d).
struct LogRow {
  double t, x, y, psi, v, p, q, theta, p_r, q_r, psi_r, s, e_p, e_q, xi, y1,
      y2, u1, u2, u, omega, v_d, V, Vdot;
};

inline constexpr std::size_t kLogColumnCount = 24;

inline constexpr std::array<std::string_view, kLogColumnCount> kLogColumns = {
    "t",  "x",     "y",  "psi", "v",  "p",  "q",  "theta",
    "p_r", "q_r",  "psi_r", "s", "e_p", "e_q", "xi", "y1",
    "y2", "u1",    "u2", "u",   "omega", "v_d", "V", "Vdot"};

inline constexpr std::array<double LogRow::*, kLogColumnCount> kLogFields = {
    &LogRow::t,   &LogRow::x,     &LogRow::y,   &LogRow::psi, &LogRow::v,
    &LogRow::p,   &LogRow::q,     &LogRow::theta, &LogRow::p_r, &LogRow::q_r,
    &LogRow::psi_r, &LogRow::s,   &LogRow::e_p, &LogRow::e_q, &LogRow::xi,
    &LogRow::y1,  &LogRow::y2,    &LogRow::u1,  &LogRow::u2,  &LogRow::u,
    &LogRow::omega, &LogRow::v_d, &LogRow::V,   &LogRow::Vdot};

// Time-indexed record of a run. The CSV form is the header line, one line
// per row, then `# key = value` trailer lines carrying `metadata`.
struct TrajectoryLog {
  double dt = 0.0;
  std::vector<LogRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::optional<std::string> meta(std::string_view key) const;

  void write_csv(std::ostream& os) const;
  // Throws a usage error on anything malformed: wrong header, short or
  // non-numeric rows, non-uniform time grid.
  static TrajectoryLog read_csv(std::istream& is);
};

std::string csv_header();

}  // namespace tpf
