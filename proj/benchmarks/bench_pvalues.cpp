#include <benchmark/benchmark.h>

#include "pvclass/classifier.hpp"
#include "pvclass/evaluation.hpp"
#include "pvclass/gaussian_fit.hpp"
#include "pvclass/knn.hpp"
#include "pvclass/simulation.hpp"

using namespace pvclass;

namespace {

TrainingSet data(std::size_t per_class) {
  return sample_gaussian_mixture(example22_model(), {per_class, per_class, per_class}, 17);
}

const FeatureVector kQuery{0.3, -0.2};

void pvalues(benchmark::State& state, MethodKind kind, PermutationMode mode) {
  const auto per_class = static_cast<std::size_t>(state.range(0));
  const TrainingSet d = kind == MethodKind::logistic
                            ? sample_gaussian_mixture(two_class_standard_model(), {per_class, per_class}, 17)
                            : data(per_class);
  MethodConfig m;
  m.kind = kind;
  m.mode = mode;
  const PValueClassifier clf(m, d);
  for (auto _ : state) benchmark::DoNotOptimize(clf.pvalues(kQuery));
  state.SetComplexityN(state.range(0));
}

void BM_PluginShortcut(benchmark::State& s) { pvalues(s, MethodKind::plugin, PermutationMode::valid_shortcut); }
void BM_PluginExactSwap(benchmark::State& s) { pvalues(s, MethodKind::plugin, PermutationMode::exact_swap); }
void BM_KnnShortcut(benchmark::State& s) { pvalues(s, MethodKind::knn, PermutationMode::valid_shortcut); }
void BM_KnnExactSwap(benchmark::State& s) { pvalues(s, MethodKind::knn, PermutationMode::exact_swap); }
void BM_LogisticShortcut(benchmark::State& s) { pvalues(s, MethodKind::logistic, PermutationMode::valid_shortcut); }

void BM_KnnAugmentedCached(benchmark::State& state) {
  const TrainingSet d = data(static_cast<std::size_t>(state.range(0)));
  const auto caches = knn_fit(d, default_k(d.size()), FeatureScaling::none);
  for (auto _ : state) benchmark::DoNotOptimize(knn_augmented_counts(caches, d, kQuery, ClassLabel(1)));
}

void BM_KnnAugmentedRecount(benchmark::State& state) {
  const TrainingSet d = data(static_cast<std::size_t>(state.range(0)));
  const std::size_t k = default_k(d.size());
  const std::vector<double> ones(d.dim(), 1.0);
  for (auto _ : state) {
    const TrainingSet aug = d.with_added(kQuery, ClassLabel(1));
    std::size_t total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) total += ball_counts(aug, aug.row(i), k, ones).total;
    benchmark::DoNotOptimize(total);
  }
}

void BM_GaussianUpdate(benchmark::State& state) {
  const TrainingSet d = data(static_cast<std::size_t>(state.range(0)));
  const auto fit = fit_pooled_gaussian(d);
  for (auto _ : state) benchmark::DoNotOptimize(fit.with_added(kQuery, ClassLabel(2)));
}

void BM_GaussianRefit(benchmark::State& state) {
  const TrainingSet d = data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_pooled_gaussian(d.with_added(kQuery, ClassLabel(2))));
}

void BM_CrossvalKnnFast(benchmark::State& state) {
  const TrainingSet d = data(static_cast<std::size_t>(state.range(0)));
  MethodConfig m;
  m.kind = MethodKind::knn;
  for (auto _ : state) benchmark::DoNotOptimize(crossval_pvalues(d, m, 1));
}

void BM_CrossvalKnnReference(benchmark::State& state) {
  const TrainingSet d = data(static_cast<std::size_t>(state.range(0)));
  MethodConfig m;
  m.kind = MethodKind::knn;
  for (auto _ : state) benchmark::DoNotOptimize(crossval_pvalues_reference(d, m));
}

}  // namespace

BENCHMARK(BM_PluginShortcut)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_PluginExactSwap)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_KnnShortcut)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_KnnExactSwap)->Arg(50)->Arg(200);
BENCHMARK(BM_LogisticShortcut)->Arg(50)->Arg(200);
BENCHMARK(BM_KnnAugmentedCached)->Arg(100)->Arg(400);
BENCHMARK(BM_KnnAugmentedRecount)->Arg(100)->Arg(400);
BENCHMARK(BM_GaussianUpdate)->Arg(100)->Arg(1000);
BENCHMARK(BM_GaussianRefit)->Arg(100)->Arg(1000);
BENCHMARK(BM_CrossvalKnnFast)->Arg(30);
BENCHMARK(BM_CrossvalKnnReference)->Arg(30);
BENCHMARK_MAIN();
