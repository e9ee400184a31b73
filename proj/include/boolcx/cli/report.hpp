#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boolcx/rational.hpp"

namespace boolcx::cli {

inline constexpr std::string_view kReportSchema = "boolcx.report/1";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRegression = 2, kExitCap = 3 };

// Bad flags or arguments; reported with exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Always "num/den", integers included.
[[nodiscard]] std::string exact(const Rational& r);
// Accepts "num/den", integers and finite decimals such as 0.25, all converted exactly.
[[nodiscard]] Rational parse_exact(std::string_view text);

// One structured document per run: metadata, a table of rows and a summary.
struct Report {
  std::string command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<nlohmann::ordered_json> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  int exit_code = kExitOk;

  // Keys outside `columns` are kept in JSON output and dropped from CSV.
  void add_row(nlohmann::ordered_json row) { rows.push_back(std::move(row)); }
  [[nodiscard]] nlohmann::ordered_json document() const;
  [[nodiscard]] std::string to_json() const;
  [[nodiscard]] std::string to_csv() const;
};

}  // namespace boolcx::cli
