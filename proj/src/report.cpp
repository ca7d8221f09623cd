#include "lights/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lights {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string cell_text(const ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "";
  return value.dump();
}

void Report::add_violation(std::string description, ordered_json data) {
  violations.push_back(ordered_json{{"description", std::move(description)}, {"data", std::move(data)}});
}

ordered_json Report::to_json() const {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = {{"verb", verb}, {"argv", argv}};
  doc["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  doc["columns"] = columns;
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) doc["rows"].push_back(r);
  doc["violations"] = ordered_json::array();
  for (const auto& v : violations) doc["violations"].push_back(v);
  doc["notes"] = notes;
  return doc;
}

Report Report::from_json(const ordered_json& doc) {
  try {
    if (doc.at("schema").get<int>() != kSchemaVersion)
      throw std::invalid_argument("unsupported report schema version");
    Report r;
    r.verb = doc.at("command").at("verb").get<std::string>();
    r.argv = doc.at("command").at("argv").get<std::vector<std::string>>();
    if (!doc.at("seed").is_null()) r.seed = doc.at("seed").get<std::uint64_t>();
    r.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& row : doc.at("rows")) r.rows.push_back(row);
    for (const auto& v : doc.at("violations")) r.violations.push_back(v);
    r.notes = doc.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string Report::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto it = row.find(columns[i]);
      os << (i ? "," : "") << csv_escape(it == row.end() ? "" : cell_text(*it));
    }
    os << '\n';
  }
  return os.str();
}

std::string Report::to_text() const {
  std::ostringstream os;
  if (!columns.empty() && !rows.empty()) {
    std::vector<std::size_t> width(columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& row : rows) {
      auto& line = cells.emplace_back();
      for (std::size_t i = 0; i < columns.size(); ++i) {
        const auto it = row.find(columns[i]);
        line.push_back(it == row.end() ? "" : cell_text(*it));
        width[i] = std::max(width[i], line.back().size());
      }
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        os << line[i];
        if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
      }
      os << '\n';
    };
    emit(columns);
    for (const auto& line : cells) emit(line);
  } else if (!columns.empty()) {
    os << "(no rows)\n";
  }
  for (const auto& n : notes) os << n << '\n';
  if (seed) os << "seed: " << *seed << '\n';
  if (!violations.empty()) {
    os << "VIOLATIONS (" << violations.size() << "):\n";
    for (const auto& v : violations)
      os << "  " << v.at("description").get<std::string>() << ' ' << v.at("data").dump() << '\n';
  }
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      out.push_back(std::move(row));
      row.clear();
    } else {
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty()) {
    row.push_back(std::move(cell));
    out.push_back(std::move(row));
  }
  return out;
}

} // namespace lights
