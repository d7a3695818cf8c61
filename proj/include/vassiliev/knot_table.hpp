#pragma once

// Knot tables: JSON lines of {"name", "gauss", "expected"?}.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vassiliev/error.hpp"
#include "vassiliev/gauss_code.hpp"
#include "vassiliev/rational.hpp"

namespace vassiliev {

struct KnotRecord {
  std::string name;
  GaussCode code;
  std::map<std::string, Rational> expected;

  std::optional<Rational> expected_value(const std::string& invariant) const {
    auto it = expected.find(invariant);
    if (it == expected.end()) return std::nullopt;
    return it->second;
  }
};

inline KnotRecord parse_knot_record(const std::string& line, std::size_t line_number) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::kParseError, "line " + std::to_string(line_number) + ": " + why, line_number);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw fail(e.what());
  }
  if (!j.is_object()) throw fail("expected a JSON object");
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty()) {
    throw fail("missing or empty \"name\"");
  }
  if (!j.contains("gauss") || !j["gauss"].is_string()) throw fail("missing \"gauss\" string");
  KnotRecord record;
  record.name = j["name"].get<std::string>();
  try {
    record.code = parse_gauss_code(j["gauss"].get<std::string>());
    if (j.contains("expected")) {
      if (!j["expected"].is_object()) throw fail("\"expected\" must be an object");
      for (const auto& [key, value] : j["expected"].items()) {
        if (!value.is_string()) throw fail("expected value for " + key + " must be a rational string");
        record.expected.emplace(key, parse_rational(value.get<std::string>()));
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParseError && e.line() != 0) throw;
    throw fail(e.what());
  }
  return record;
}

inline std::vector<KnotRecord> parse_knot_table(std::istream& in) {
  std::vector<KnotRecord> records;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(parse_knot_record(line, number));
  }
  return records;
}

inline std::vector<KnotRecord> load_knot_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  return parse_knot_table(in);
}

inline nlohmann::json to_json(const KnotRecord& record) {
  nlohmann::json j{{"name", record.name}, {"gauss", format_gauss_code(record.code)}};
  if (!record.expected.empty()) {
    nlohmann::json expected = nlohmann::json::object();
    for (const auto& [key, value] : record.expected) expected[key] = format_rational(value);
    j["expected"] = std::move(expected);
  }
  return j;
}

inline const KnotRecord* find_knot(const std::vector<KnotRecord>& table, const std::string& name) {
  for (const auto& r : table) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

}  // namespace vassiliev
