#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace occam {

/// One checked inequality `observed <= bound` (or `>=` where a checker says
/// so), with the parameters it was evaluated at.
///
/// JSON: {"lemma", "params", "bound", "observed", "pass", "mode"}; the margin
/// travels inside params when nonzero. mode is one of exhaustive, sampled,
/// monte_carlo, analytic, vacuous. A vacuous report passes because the
/// hypothesis of the checked statement does not hold.
struct BoundReport {
  std::string lemma;
  std::vector<std::pair<std::string, double>> params;
  double bound = 0.0;
  double observed = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::string mode = "exhaustive";

  BoundReport& with(std::string key, double value);
  std::optional<double> param(std::string_view key) const;
  bool vacuous() const { return mode == "vacuous"; }
};

nlohmann::ordered_json to_json(const BoundReport& report);

/// Pretty-printed JSON array, newline terminated.
std::string reports_to_json(std::span<const BoundReport> reports);

inline constexpr std::string_view kReportCsvHeader =
    "lemma,n,s_or_x,m,k,epsilon,bound,observed,margin,pass,mode";

/// kReportCsvHeader followed by one row per report.
std::string reports_to_csv(std::span<const BoundReport> reports);

/// Shortest round-trip decimal form.
std::string format_number(double value);

bool all_pass(std::span<const BoundReport> reports);

}  // namespace occam
