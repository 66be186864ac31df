#include "occam/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace occam {

BoundReport& BoundReport::with(std::string key, double value) {
  params.emplace_back(std::move(key), value);
  return *this;
}

std::optional<double> BoundReport::param(std::string_view key) const {
  for (const auto& [name, value] : params) {
    if (name == key) return value;
  }
  return std::nullopt;
}

namespace {

nlohmann::ordered_json number_json(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9007199254740992.0) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

}  // namespace

nlohmann::ordered_json to_json(const BoundReport& report) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, value] : report.params) params[name] = number_json(value);
  if (report.margin != 0.0) params["margin"] = number_json(report.margin);
  nlohmann::ordered_json out;
  out["lemma"] = report.lemma;
  out["params"] = std::move(params);
  out["bound"] = number_json(report.bound);
  out["observed"] = number_json(report.observed);
  out["pass"] = report.pass;
  out["mode"] = report.mode;
  return out;
}

std::string reports_to_json(std::span<const BoundReport> reports) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& r : reports) array.push_back(to_json(r));
  return array.dump(2) + "\n";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string reports_to_csv(std::span<const BoundReport> reports) {
  std::string out(kReportCsvHeader);
  out += '\n';
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : reports) {
    auto s_or_x = r.param("x");
    if (!s_or_x) s_or_x = r.param("s");
    out += r.lemma + ',' + cell(r.param("n")) + ',' + cell(s_or_x) + ',' + cell(r.param("m")) +
           ',' + cell(r.param("k")) + ',' + cell(r.param("epsilon")) + ',' +
           format_number(r.bound) + ',' + format_number(r.observed) + ',' +
           format_number(r.margin) + ',' + (r.pass ? "true" : "false") + ',' + r.mode + '\n';
  }
  return out;
}

bool all_pass(std::span<const BoundReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.pass; });
}

}  // namespace occam
