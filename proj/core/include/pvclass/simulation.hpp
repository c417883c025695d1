#pragma once

// Seeded samplers, the validity and convergence experiments, prediction-region
// maps on a 2-D lattice and Monte Carlo ROC curves.
//
// Every routine is a pure function of its arguments including the seed.
// Replications and lattice points draw from sub-streams derive_seed(seed, {...}),
// so results do not depend on the thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "pvclass/classifier.hpp"
#include "pvclass/core.hpp"
#include "pvclass/evaluation.hpp"
#include "pvclass/oracle.hpp"

namespace pvclass {

/// Exactly sizes[theta] draws from class theta, grouped by class in label order.
TrainingSet sample_gaussian_mixture(const GaussianMixtureModel& model, const std::vector<std::size_t>& sizes,
                                    std::uint64_t seed);

/// Query points from the mixture: labels drawn with the prior weights.
struct LabeledSample {
  std::vector<FeatureVector> points;
  std::vector<ClassLabel> labels;
};
LabeledSample sample_mixture_points(const GaussianMixtureModel& model, std::size_t count, std::uint64_t seed);

/// Three classes in the plane: mu = (-1,1), (-1,-1), (2,0); Sigma_1 = Sigma_2 =
/// [[1,0.5],[0.5,1]], Sigma_3 = 0.4 I; equal weights.
GaussianMixtureModel example22_model();

struct NamedMethod {
  std::string name;
  MethodConfig method;
};

struct ValidityConfig {
  GaussianMixtureModel model = two_class_standard_model();
  std::vector<std::size_t> sizes{19, 19};
  std::vector<NamedMethod> methods;
  std::vector<double> alphas{0.05, 0.10, 0.25};
  std::size_t replications = 5000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct ValidityCell {
  std::string method;
  ClassLabel theta;
  double alpha = 0.0;
  double rate = 0.0;
  double std_error = 0.0;  // sqrt(alpha (1 - alpha) / R)
  double bound = 0.0;      // alpha + 3 std_error
  bool pass = false;
};

struct ValidityResult {
  std::vector<ValidityCell> cells;
  /// rank_counts[m][theta][j - 1] = #{replications : pi_theta = j / (N_theta + 1)} for
  /// permutation methods; empty for typicality.
  std::vector<std::vector<std::vector<std::size_t>>> rank_counts;
  /// p-values per (method, theta), one per replication.
  std::vector<std::vector<std::vector<double>>> pvalues;
};

/// Per replication r: D from derive_seed(seed, {r, 0}) and, for each theta, a
/// fresh X ~ P_theta from derive_seed(seed, {r, 1, theta}). Every method is
/// evaluated on the same (D, X).
ValidityResult validity_experiment(const ValidityConfig& config);

/// Pearson statistic of counts against the uniform distribution over the bins.
double uniform_chisq(const std::vector<std::size_t>& counts);

/// Kolmogorov-Smirnov distance of a sample from Uniform(0, 1).
double ks_uniform(std::vector<double> sample);

struct ConvergenceConfig {
  GaussianMixtureModel model = two_class_standard_model();
  std::vector<std::size_t> schedule{200, 800, 3200};
  /// Neighbor count per n; 0 selects ceil(n^{2/3}).
  std::size_t k = 0;
  std::size_t queries = 200;
  std::size_t oracle_samples = kDefaultMonteCarloSamples;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct ConvergenceRow {
  std::size_t n = 0;
  std::size_t k = 0;
  double knn_gap = 0.0;     // mean |pi_knn - pi*| over queries and classes
  double plugin_gap = 0.0;  // mean |pi_plugin - pi*|
};

/// Training sizes N_theta = round(n w_theta); valid-shortcut p-values at query
/// points drawn from the mixture; pi* in closed form for two homoscedastic
/// classes and by Monte Carlo otherwise.
std::vector<ConvergenceRow> convergence_experiment(const ConvergenceConfig& config);

struct Lattice {
  double x_min = -4.0;
  double x_max = 4.0;
  double y_min = -4.0;
  double y_max = 4.0;
  std::size_t nx = 161;
  std::size_t ny = 161;

  double x(std::size_t ix) const;
  double y(std::size_t iy) const;
};

/// masks[iy * nx + ix] is the region at (x(ix), y(iy)).
struct RegionMap {
  Lattice lattice;
  double alpha = 0.0;
  std::size_t num_classes = 0;
  std::vector<LabelSet> masks;

  LabelSet at(std::size_t ix, std::size_t iy) const { return masks[iy * lattice.nx + ix]; }
  bool contains_pattern(LabelSet s) const;
};

/// Oracle regions. Two homoscedastic classes use the closed form; otherwise a
/// single reference sample of `samples` draws per class is shared by all points.
std::vector<RegionMap> oracle_region_maps(const GaussianMixtureModel& model, const std::vector<double>& alphas,
                                          const Lattice& lattice = {},
                                          std::size_t samples = kDefaultMonteCarloSamples, std::uint64_t seed = 1,
                                          unsigned threads = 0);

/// Data-driven regions from a fitted classifier.
std::vector<RegionMap> data_region_maps(const PValueClassifier& classifier, const std::vector<double>& alphas,
                                        const Lattice& lattice = {}, unsigned threads = 0);

/// Sorted members joined by "+", or "-" for the empty set.
std::string region_code(LabelSet s);

/// Fill colour of a region for three classes (black, red, green, dark blue,
/// yellow, magenta, cyan, white); a grey ramp by size otherwise.
std::string region_color(LabelSet s, std::size_t num_classes);

/// Entry theta: alpha -> P(pi_theta(X, D) <= alpha | D) for X ~ P_b, from `draws`
/// points drawn with derive_seed(seed, {b}) (shared by all theta).
std::vector<RocCurve> conditional_rocs(const PValueClassifier& classifier, const GaussianMixtureModel& model,
                                       ClassLabel b, std::size_t draws, std::uint64_t seed, unsigned threads = 0);

/// Entry theta: alpha -> P(pi*_theta(X) <= alpha) for X ~ P_b.
std::vector<RocCurve> oracle_rocs(const OptimalPValues& oracle, const GaussianMixtureModel& model, ClassLabel b,
                                  std::size_t draws, std::uint64_t seed, unsigned threads = 0);

}  // namespace pvclass
