#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lights {

using ordered_json = nlohmann::ordered_json;

/// Result of one CLI invocation. Rows are JSON objects whose keys follow
/// `columns`; values are integers, booleans or strings.
struct Report {
  static constexpr int kSchemaVersion = 1;

  std::string verb;
  std::vector<std::string> argv;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> columns;
  std::vector<ordered_json> rows;
  std::vector<ordered_json> violations; // {"description": ..., "data": {...}}
  std::vector<std::string> notes;

  void add_violation(std::string description, ordered_json data = ordered_json::object());

  ordered_json to_json() const;
  /// Throws std::invalid_argument if the document does not follow the schema layout.
  static Report from_json(const ordered_json& doc);

  std::string to_csv() const;
  std::string to_text() const;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Parses the CSV produced by Report::to_csv into header + string cells.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
/// The cell text used for a JSON value in CSV and text tables.
std::string cell_text(const ordered_json& value);

} // namespace lights
