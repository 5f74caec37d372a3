#include "trajectory_log.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "errors.hpp"
#include "numfmt.hpp"

namespace tpf {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string csv_header() {
  std::string h;
  for (std::size_t i = 0; i < kLogColumns.size(); ++i) {
    if (i) h += ',';
    h += kLogColumns[i];
  }
  return h;
}

std::optional<std::string> TrajectoryLog::meta(std::string_view key) const {
  // Last write wins, matching the scenario-file rule.
  for (auto it = metadata.rbegin(); it != metadata.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

void TrajectoryLog::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  std::string line;
  for (const LogRow& r : rows) {
    line.clear();
    for (std::size_t i = 0; i < kLogFields.size(); ++i) {
      if (i) line += ',';
      line += format_general(r.*kLogFields[i], 17);
    }
    line += '\n';
    os << line;
  }
  for (const auto& [k, v] : metadata) os << "# " << k << " = " << v << '\n';
}

TrajectoryLog TrajectoryLog::read_csv(std::istream& is) {
  TrajectoryLog log;
  std::string line;
  if (!std::getline(is, line)) fail_usage("log is empty");
  if (trim(line) != csv_header()) fail_usage("log header does not match the trajectory column contract");

  std::size_t lineno = 1;
  bool in_trailer = false;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      in_trailer = true;
      const std::string_view body = trim(view.substr(1));
      const std::size_t eq = body.find('=');
      if (eq != std::string_view::npos) {
        log.metadata.emplace_back(std::string(trim(body.substr(0, eq))),
                                  std::string(trim(body.substr(eq + 1))));
      }
      continue;
    }
    if (in_trailer) {
      fail_usage("log line " + std::to_string(lineno) + ": data row after trailer");
    }
    const auto fields = split(view, ',');
    if (fields.size() != kLogColumnCount) {
      fail_usage("log line " + std::to_string(lineno) + ": expected " +
                 std::to_string(kLogColumnCount) + " fields, got " +
                 std::to_string(fields.size()));
    }
    LogRow row{};
    for (std::size_t i = 0; i < kLogColumnCount; ++i) {
      double value = 0.0;
      if (!parse_double(fields[i], value) || !std::isfinite(value)) {
        fail_usage("log line " + std::to_string(lineno) + ": bad value in column " +
                   std::string(kLogColumns[i]));
      }
      row.*kLogFields[i] = value;
    }
    log.rows.push_back(row);
  }
  if (log.rows.size() < 2) fail_usage("log has fewer than two rows");

  log.dt = (log.rows.back().t - log.rows.front().t) /
           static_cast<double>(log.rows.size() - 1);
  if (!(log.dt > 0.0)) fail_usage("log time column is not increasing");
  for (std::size_t k = 1; k < log.rows.size(); ++k) {
    const double step = log.rows[k].t - log.rows[k - 1].t;
    if (std::abs(step - log.dt) > 1e-9 * std::max(1.0, std::abs(log.rows[k].t))) {
      fail_usage("log time grid is not uniform at row " + std::to_string(k));
    }
  }
  return log;
}

}  // namespace tpf
