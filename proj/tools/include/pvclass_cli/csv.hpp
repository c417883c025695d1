#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pvclass/core.hpp"

namespace pvclass::cli {

/// Malformed input; the message names the line and column.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based file line of each row
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

/// Training data: the label column selected by name, every other column numeric.
struct LabeledTable {
  std::vector<std::string> feature_names;
  TrainingSet data;
};
LabeledTable training_from_csv(const CsvTable& table, const std::string& label_column);

/// Query rows: the training feature columns looked up by name (other columns ignored).
std::vector<FeatureVector> queries_from_csv(const CsvTable& table, const std::vector<std::string>& feature_names);

}  // namespace pvclass::cli
