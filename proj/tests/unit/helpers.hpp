#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/rng.hpp"
#include "pvclass/warnings.hpp"

namespace pvtest {

using namespace pvclass;

// Gaussian blobs: class t centered at (2t, 0, ..., 0), unit noise.
inline TrainingSet random_data(std::size_t n, std::size_t q, std::size_t classes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> features;
  std::vector<ClassLabel> labels;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < classes; ++t) names.push_back(std::to_string(t + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t t = i % classes;
    for (std::size_t j = 0; j < q; ++j) features.push_back(rng.normal() + (j == 0 ? 2.0 * static_cast<double>(t) : 0.0));
    labels.push_back(ClassLabel::from_index(t));
  }
  return make_training_set(std::move(features), q, std::move(labels), std::move(names));
}

// Integer-valued features, so distance ties are common.
inline TrainingSet lattice_data(std::size_t n, std::size_t q, std::size_t classes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> features;
  std::vector<ClassLabel> labels;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < classes; ++t) names.push_back(std::to_string(t + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t t = i % classes;
    for (std::size_t j = 0; j < q; ++j) features.push_back(static_cast<double>(rng.next() % 4));
    labels.push_back(ClassLabel::from_index(t));
  }
  return make_training_set(std::move(features), q, std::move(labels), std::move(names));
}

// Silences library warnings for the lifetime of the object and counts them.
class CaptureWarnings {
 public:
  CaptureWarnings() {
    previous_ = set_warning_handler([this](const std::string& m) { messages.push_back(m); });
  }
  ~CaptureWarnings() { set_warning_handler(previous_); }
  std::vector<std::string> messages;

 private:
  WarningHandler previous_;
};

// Same data with the rows of group theta cyclically rotated.
inline TrainingSet rotate_group(const TrainingSet& d, ClassLabel theta) {
  const auto& g = d.group(theta);
  std::vector<double> features = d.features();
  const std::size_t q = d.dim();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::size_t src = g[(k + 1) % g.size()];
    for (std::size_t j = 0; j < q; ++j) features[g[k] * q + j] = d.features()[src * q + j];
  }
  return make_training_set(std::move(features), q, d.labels(), d.label_names());
}

}  // namespace pvtest
