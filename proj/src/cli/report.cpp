#include "boolcx/cli/report.hpp"

#include <cctype>
#include <sstream>

namespace boolcx::cli {

namespace {

std::string csv_field(const nlohmann::ordered_json& value) {
  std::string text;
  if (value.is_null()) return "";
  if (value.is_string()) {
    text = value.get<std::string>();
  } else {
    text = value.dump();
  }
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string exact(const Rational& r) { return r.numerator().get_str() + "/" + r.denominator().get_str(); }

Rational parse_exact(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    try {
      return Rational::parse(s);
    } catch (const std::exception&) {
      throw UsageError("not an exact number: '" + s + "'");
    }
  }
  const std::string whole = s.substr(0, dot);
  const std::string fraction = s.substr(dot + 1);
  const bool negative = !whole.empty() && whole[0] == '-';
  const std::string digits = (negative ? whole.substr(1) : whole) + fraction;
  if (digits.empty() || fraction.find_first_not_of("0123456789") != std::string::npos ||
      digits.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("not an exact number: '" + s + "'");
  }
  mpz_class numerator(digits, 10);
  if (negative) numerator = -numerator;
  mpz_class denominator = 1;
  for (std::size_t i = 0; i < fraction.size(); ++i) denominator *= 10;
  return Rational(numerator, denominator);
}

nlohmann::ordered_json Report::document() const {
  nlohmann::ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  doc["meta"] = meta;
  doc["columns"] = columns;
  doc["rows"] = rows;
  doc["summary"] = summary;
  doc["exit_code"] = exit_code;
  return doc;
}

std::string Report::to_json() const { return document().dump(2) + "\n"; }

std::string Report::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(columns[i])) out << csv_field(row.at(columns[i]));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace boolcx::cli
