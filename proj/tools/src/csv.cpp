#include "pvclass_cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pvclass::cli {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw CsvError("line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(trim(cur));
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no, const std::string& column) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw CsvError("line " + std::to_string(line_no) + ", column '" + column + "': cannot parse '" + s +
                   "' as a finite number");
  }
  return v;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_line(line, line_no);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                     " fields, found " + std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw CsvError("empty input: a header row is required");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

LabeledTable training_from_csv(const CsvTable& table, const std::string& label_column) {
  const auto it = std::find(table.header.begin(), table.header.end(), label_column);
  if (it == table.header.end()) throw CsvError("label column '" + label_column + "' not found in header");
  const auto label_pos = static_cast<std::size_t>(it - table.header.begin());
  LabeledTable out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != label_pos) out.feature_names.push_back(table.header[c]);
  }
  if (out.feature_names.empty()) throw CsvError("no feature columns besides the label");
  std::vector<FeatureVector> features;
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    FeatureVector x;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == label_pos) continue;
      x.push_back(parse_number(table.rows[r][c], table.line_numbers[r], table.header[c]));
    }
    if (table.rows[r][label_pos].empty()) {
      throw CsvError("line " + std::to_string(table.line_numbers[r]) + ", column '" + label_column + "': empty label");
    }
    features.push_back(std::move(x));
    labels.push_back(table.rows[r][label_pos]);
  }
  out.data = validate_training_set(features, labels);
  return out;
}

std::vector<FeatureVector> queries_from_csv(const CsvTable& table, const std::vector<std::string>& feature_names) {
  std::vector<std::size_t> pos;
  for (const auto& name : feature_names) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw CsvError("query file lacks feature column '" + name + "'");
    pos.push_back(static_cast<std::size_t>(it - table.header.begin()));
  }
  std::vector<FeatureVector> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    FeatureVector x;
    for (std::size_t k = 0; k < pos.size(); ++k) {
      x.push_back(parse_number(table.rows[r][pos[k]], table.line_numbers[r], feature_names[k]));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace pvclass::cli
