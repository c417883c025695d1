#include "pvclass/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include "pvclass/errors.hpp"
#include "pvclass/rng.hpp"

namespace pvclass {

TrainingSet sample_gaussian_mixture(const GaussianMixtureModel& model, const std::vector<std::size_t>& sizes,
                                    std::uint64_t seed) {
  const std::size_t num_classes = model.num_classes();
  if (sizes.size() != num_classes) throw InvalidArgument("one sample size per class is required");
  const std::size_t q = model.dim();
  std::vector<double> features;
  std::vector<ClassLabel> labels;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < num_classes; ++t) {
    if (sizes[t] == 0) throw InvalidArgument("sample sizes must be at least 1");
    const auto theta = ClassLabel::from_index(t);
    names.push_back(std::to_string(t + 1));
    Rng rng(derive_seed(seed, {t}));
    for (std::size_t j = 0; j < sizes[t]; ++j) {
      const FeatureVector x = model.sample(theta, rng);
      features.insert(features.end(), x.begin(), x.end());
      labels.push_back(theta);
    }
  }
  return make_training_set(std::move(features), q, std::move(labels), std::move(names));
}

LabeledSample sample_mixture_points(const GaussianMixtureModel& model, std::size_t count, std::uint64_t seed) {
  LabeledSample out;
  Rng rng(seed);
  for (std::size_t j = 0; j < count; ++j) {
    const auto theta = ClassLabel::from_index(rng.categorical(model.weights()));
    out.labels.push_back(theta);
    out.points.push_back(model.sample(theta, rng));
  }
  return out;
}

GaussianMixtureModel example22_model() {
  const double w = 1.0 / 3.0;
  return GaussianMixtureModel({w, w, 1.0 - 2.0 * w}, {{-1.0, 1.0}, {-1.0, -1.0}, {2.0, 0.0}},
                              {Matrix{{1.0, 0.5}, {0.5, 1.0}}, Matrix{{1.0, 0.5}, {0.5, 1.0}},
                               Matrix{{0.4, 0.0}, {0.0, 0.4}}});
}

namespace {

[[noreturn]] void rethrow_in_replication(const DegenerateFitError& e, std::size_t r) {
  throw DegenerateFitError(std::string(e.what()) + " in replication " + std::to_string(r), e.pivot(), e.edit_index());
}

}  // namespace

ValidityResult validity_experiment(const ValidityConfig& config) {
  if (config.replications == 0) throw InvalidArgument("replications must be at least 1");
  for (double a : config.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  }
  const std::size_t num_classes = config.model.num_classes();
  const std::size_t methods = config.methods.size();
  const std::size_t reps = config.replications;
  std::vector<double> p(reps * methods * num_classes);

  parallel_for(
      reps,
      [&](std::size_t r) {
        try {
          const TrainingSet d = sample_gaussian_mixture(config.model, config.sizes, derive_seed(config.seed, {r, 0}));
          const auto shared = std::make_shared<const TrainingSet>(d);
          std::vector<FeatureVector> queries;
          for (std::size_t t = 0; t < num_classes; ++t) {
            Rng rng(derive_seed(config.seed, {r, 1, t}));
            queries.push_back(config.model.sample(ClassLabel::from_index(t), rng));
          }
          for (std::size_t m = 0; m < methods; ++m) {
            const PValueClassifier classifier(config.methods[m].method, shared);
            for (std::size_t t = 0; t < num_classes; ++t) {
              p[(r * methods + m) * num_classes + t] = classifier.pvalue(ClassLabel::from_index(t), queries[t]);
            }
          }
        } catch (const DegenerateFitError& e) {
          rethrow_in_replication(e, r);
        }
      },
      config.threads);

  ValidityResult result;
  result.rank_counts.resize(methods);
  result.pvalues.resize(methods);
  for (std::size_t m = 0; m < methods; ++m) {
    const bool permutation = config.methods[m].method.kind != MethodKind::typicality;
    result.rank_counts[m].resize(num_classes);
    result.pvalues[m].resize(num_classes);
    for (std::size_t t = 0; t < num_classes; ++t) {
      auto& values = result.pvalues[m][t];
      for (std::size_t r = 0; r < reps; ++r) values.push_back(p[(r * methods + m) * num_classes + t]);
      if (permutation) {
        const std::size_t grid = config.sizes[t] + 1;
        auto& counts = result.rank_counts[m][t];
        counts.assign(grid, 0);
        for (double v : values) {
          const auto j = static_cast<std::size_t>(std::lround(v * static_cast<double>(grid)));
          ++counts[std::clamp<std::size_t>(j, 1, grid) - 1];
        }
      }
      for (double a : config.alphas) {
        ValidityCell cell;
        cell.method = config.methods[m].name;
        cell.theta = ClassLabel::from_index(t);
        cell.alpha = a;
        const auto hits = std::count_if(values.begin(), values.end(), [&](double v) { return v <= a; });
        cell.rate = static_cast<double>(hits) / static_cast<double>(reps);
        cell.std_error = std::sqrt(a * (1.0 - a) / static_cast<double>(reps));
        cell.bound = a + 3.0 * cell.std_error;
        cell.pass = cell.rate <= cell.bound;
        result.cells.push_back(cell);
      }
    }
  }
  return result;
}

double uniform_chisq(const std::vector<std::size_t>& counts) {
  if (counts.empty()) throw InvalidArgument("no bins");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

double ks_uniform(std::vector<double> sample) {
  if (sample.empty()) throw InvalidArgument("empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double u = std::clamp(sample[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
  }
  return d;
}

std::vector<ConvergenceRow> convergence_experiment(const ConvergenceConfig& config) {
  const GaussianMixtureModel& model = config.model;
  const std::size_t num_classes = model.num_classes();
  const bool closed = num_classes == 2 && model.homoscedastic();
  std::optional<OptimalPValues> mc;
  if (!closed) mc.emplace(model, config.oracle_samples, derive_seed(config.seed, {2}), config.threads);
  const auto oracle = [&](ClassLabel theta, FeatureView x) {
    return closed ? optimal_pvalue_2class_closed(model, theta, x) : mc->pvalue(theta, x);
  };

  std::vector<ConvergenceRow> rows;
  std::size_t previous = 0;
  for (std::size_t n : config.schedule) {
    if (n <= previous) throw InvalidArgument("the schedule must be increasing");
    previous = n;
    std::vector<std::size_t> sizes;
    for (std::size_t t = 0; t < num_classes; ++t) {
      sizes.push_back(std::max<std::size_t>(
          2, static_cast<std::size_t>(std::lround(static_cast<double>(n) * model.weight(ClassLabel::from_index(t))))));
    }
    const auto d = std::make_shared<const TrainingSet>(sample_gaussian_mixture(model, sizes, derive_seed(config.seed, {n, 0})));
    const LabeledSample queries = sample_mixture_points(model, config.queries, derive_seed(config.seed, {n, 1}));

    MethodConfig knn;
    knn.kind = MethodKind::knn;
    knn.k = config.k == 0 ? default_k(d->size()) : config.k;
    MethodConfig plugin;
    plugin.kind = MethodKind::plugin;
    const PValueClassifier knn_classifier(knn, d);
    const PValueClassifier plugin_classifier(plugin, d);
    if (auto* s = dynamic_cast<const KnnStatistic*>(knn_classifier.statistic())) s->caches();

    std::vector<double> knn_gap(config.queries);
    std::vector<double> plugin_gap(config.queries);
    parallel_for(
        config.queries,
        [&](std::size_t j) {
          const FeatureVector& x = queries.points[j];
          for (std::size_t t = 0; t < num_classes; ++t) {
            const auto theta = ClassLabel::from_index(t);
            const double star = oracle(theta, x);
            knn_gap[j] += std::abs(knn_classifier.pvalue(theta, x) - star);
            plugin_gap[j] += std::abs(plugin_classifier.pvalue(theta, x) - star);
          }
        },
        config.threads);
    ConvergenceRow row;
    row.n = d->size();
    row.k = knn.k;
    const double denom = static_cast<double>(config.queries * num_classes);
    for (std::size_t j = 0; j < config.queries; ++j) {
      row.knn_gap += knn_gap[j] / denom;
      row.plugin_gap += plugin_gap[j] / denom;
    }
    rows.push_back(row);
  }
  return rows;
}

double Lattice::x(std::size_t ix) const {
  return nx == 1 ? x_min
                 : (x_min * static_cast<double>(nx - 1 - ix) + x_max * static_cast<double>(ix)) /
                       static_cast<double>(nx - 1);
}

double Lattice::y(std::size_t iy) const {
  return ny == 1 ? y_min
                 : (y_min * static_cast<double>(ny - 1 - iy) + y_max * static_cast<double>(iy)) /
                       static_cast<double>(ny - 1);
}

bool RegionMap::contains_pattern(LabelSet s) const { return std::find(masks.begin(), masks.end(), s) != masks.end(); }

namespace {

std::vector<RegionMap> build_maps(std::size_t num_classes, const std::vector<double>& alphas, const Lattice& lattice,
                                  const std::function<void(FeatureView, std::span<double>)>& pvalues,
                                  unsigned threads) {
  if (lattice.nx == 0 || lattice.ny == 0) throw InvalidArgument("empty lattice");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  }
  std::vector<RegionMap> maps;
  for (double a : alphas) {
    RegionMap m;
    m.lattice = lattice;
    m.alpha = a;
    m.num_classes = num_classes;
    m.masks.assign(lattice.nx * lattice.ny, 0);
    maps.push_back(std::move(m));
  }
  parallel_for(
      lattice.ny,
      [&](std::size_t iy) {
        std::vector<double> p(num_classes);
        for (std::size_t ix = 0; ix < lattice.nx; ++ix) {
          const FeatureVector x{lattice.x(ix), lattice.y(iy)};
          pvalues(x, p);
          for (auto& m : maps) m.masks[iy * lattice.nx + ix] = region_mask(p, m.alpha);
        }
      },
      threads);
  return maps;
}

}  // namespace

std::vector<RegionMap> oracle_region_maps(const GaussianMixtureModel& model, const std::vector<double>& alphas,
                                          const Lattice& lattice, std::size_t samples, std::uint64_t seed,
                                          unsigned threads) {
  if (model.dim() != 2) throw InvalidArgument("region maps need two features");
  const std::size_t num_classes = model.num_classes();
  if (num_classes == 2 && model.homoscedastic()) {
    return build_maps(
        num_classes, alphas, lattice,
        [&](FeatureView x, std::span<double> p) {
          for (std::size_t t = 0; t < num_classes; ++t) {
            p[t] = optimal_pvalue_2class_closed(model, ClassLabel::from_index(t), x);
          }
        },
        threads);
  }
  const OptimalPValues oracle(model, samples, seed, threads);
  return build_maps(
      num_classes, alphas, lattice,
      [&](FeatureView x, std::span<double> p) {
        for (std::size_t t = 0; t < num_classes; ++t) p[t] = oracle.pvalue(ClassLabel::from_index(t), x);
      },
      threads);
}

std::vector<RegionMap> data_region_maps(const PValueClassifier& classifier, const std::vector<double>& alphas,
                                        const Lattice& lattice, unsigned threads) {
  if (classifier.data().dim() != 2) throw InvalidArgument("region maps need two features");
  const std::size_t num_classes = classifier.data().num_classes();
  return build_maps(
      num_classes, alphas, lattice,
      [&](FeatureView x, std::span<double> p) {
        for (std::size_t t = 0; t < num_classes; ++t) p[t] = classifier.pvalue(ClassLabel::from_index(t), x);
      },
      threads);
}

std::string region_code(LabelSet s) {
  if (s == 0) return "-";
  std::string out;
  for (const auto theta : members_of(s)) {
    if (!out.empty()) out += '+';
    out += std::to_string(theta.value());
  }
  return out;
}

std::string region_color(LabelSet s, std::size_t num_classes) {
  if (num_classes == 3) {
    switch (s) {
      case 0b000: return "#000000";
      case 0b001: return "#ff0000";
      case 0b010: return "#00b000";
      case 0b100: return "#00008b";
      case 0b011: return "#ffff00";
      case 0b101: return "#ff00ff";
      case 0b110: return "#00ffff";
      case 0b111: return "#ffffff";
      default: break;
    }
  }
  const int level = num_classes == 0 ? 0 : static_cast<int>(255.0 * std::popcount(s) / static_cast<double>(num_classes));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
  return buf;
}

std::vector<RocCurve> conditional_rocs(const PValueClassifier& classifier, const GaussianMixtureModel& model,
                                       ClassLabel b, std::size_t draws, std::uint64_t seed, unsigned threads) {
  const std::size_t num_classes = classifier.data().num_classes();
  if (model.num_classes() != num_classes) throw InvalidArgument("model and data disagree on the number of classes");
  if (auto* s = dynamic_cast<const KnnStatistic*>(classifier.statistic())) s->caches();
  const std::size_t chunks = (draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<double> p(draws * num_classes);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(b.value()), c}));
        const std::size_t end = std::min(draws, (c + 1) * kMonteCarloChunk);
        for (std::size_t j = c * kMonteCarloChunk; j < end; ++j) {
          const FeatureVector x = model.sample(b, rng);
          for (std::size_t t = 0; t < num_classes; ++t) {
            p[j * num_classes + t] = classifier.pvalue(ClassLabel::from_index(t), x);
          }
        }
      },
      threads);
  std::vector<RocCurve> out;
  for (std::size_t t = 0; t < num_classes; ++t) {
    std::vector<double> column(draws);
    for (std::size_t j = 0; j < draws; ++j) column[j] = p[j * num_classes + t];
    out.emplace_back(std::move(column));
  }
  return out;
}

std::vector<RocCurve> oracle_rocs(const OptimalPValues& oracle, const GaussianMixtureModel& model, ClassLabel b,
                                  std::size_t draws, std::uint64_t seed, unsigned threads) {
  const std::size_t num_classes = model.num_classes();
  const std::size_t chunks = (draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<double> p(draws * num_classes);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(b.value()), c}));
        const std::size_t end = std::min(draws, (c + 1) * kMonteCarloChunk);
        for (std::size_t j = c * kMonteCarloChunk; j < end; ++j) {
          const FeatureVector x = model.sample(b, rng);
          for (std::size_t t = 0; t < num_classes; ++t) {
            p[j * num_classes + t] = oracle.pvalue(ClassLabel::from_index(t), x);
          }
        }
      },
      threads);
  std::vector<RocCurve> out;
  for (std::size_t t = 0; t < num_classes; ++t) {
    std::vector<double> column(draws);
    for (std::size_t j = 0; j < draws; ++j) column[j] = p[j * num_classes + t];
    out.emplace_back(std::move(column));
  }
  return out;
}

}  // namespace pvclass
