#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvclass::cli {

/// Bad flag value, unknown config key, wrong enumeration. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved settings of one invocation. Keys of the JSON form match the
/// long flag names.
struct SessionConfig {
  std::string command;     // classify | crossval | simulate
  std::string experiment;  // simulate only: validity | convergence | region-map

  std::string train;
  std::string query;
  std::string label = "label";
  std::vector<std::string> methods;  // one entry except for simulate validity
  std::vector<std::string> modes;
  std::vector<double> alphas;
  std::size_t k = 0;
  bool scale_features = false;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::vector<std::string> formats;
  unsigned threads = 0;

  // simulate
  std::string model;
  std::string source = "oracle";  // region-map: oracle | sample | train
  std::size_t replications = 5000;
  std::size_t group_size = 0;  // 0: 19 for validity, 100 for sampled region maps
  std::vector<std::size_t> schedule;
  std::size_t queries = 200;
  std::size_t mc_samples = 20000;
  std::size_t grid = 161;

  bool wants(const std::string& format) const;
};

/// Fills defaults and validates enumerations and ranges. Throws UsageError.
void finalize(SessionConfig& config);

/// Reads the flag keys of a JSON object into `config`. Unknown keys are errors.
void apply_json(SessionConfig& config, const std::string& json_text);

/// Resolved configuration as JSON (the seed included when set).
std::string to_json(const SessionConfig& config);

}  // namespace pvclass::cli
