#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "smartnote/assets.hpp"
#include "smartnote/embedding.hpp"
#include "smartnote/metrics.hpp"
#include "smartnote/tree_model.hpp"

using namespace smartnote;

namespace {

std::string synthetic_note(std::size_t sections, std::size_t items) {
  std::string md = "# tool v2.0.0\n\n";
  for (std::size_t s = 0; s < sections; ++s) {
    md += "## Section " + std::to_string(s) + "\n";
    for (std::size_t i = 0; i < items; ++i)
      md += "- Fixed the `parse_args` crash in HttpClient on Linux when input is empty (#" + std::to_string(s * 100 + i) +
            ")\n";
  }
  return md;
}

std::vector<CommitRef> synthetic_commits(std::size_t n) {
  std::vector<CommitRef> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({std::string(40, "0123456789abcdef"[i % 16]), static_cast<int>(i)});
  return out;
}

}  // namespace

static void BM_EvaluateNote(benchmark::State& state) {
  const auto md = synthetic_note(8, static_cast<std::size_t>(state.range(0)));
  const auto commits = synthetic_commits(static_cast<std::size_t>(state.range(0)) * 8);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_note(md, &commits));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(md.size()));
}
BENCHMARK(BM_EvaluateNote)->Arg(5)->Arg(50);

static void BM_HashedEmbedding(benchmark::State& state) {
  const std::string msg =
      "feat(parser): add section parsing with a lookup cache\n\nThe parser now keeps parsed sections and evicts "
      "stale entries when the file changes on disk.";
  for (auto _ : state) benchmark::DoNotOptimize(hashed_embedding(msg, kDefaultEmbeddingDim));
}
BENCHMARK(BM_HashedEmbedding);

static void BM_CategoryInference(benchmark::State& state) {
  const auto model = load_model(asset_path("models/category.json"));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> x(model.feature_layout.size());
  for (auto& v : x) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(predict_category(x, model));
}
BENCHMARK(BM_CategoryInference);

static void BM_SignificanceInference(benchmark::State& state) {
  const auto model = load_model(asset_path("models/significance.json"));
  std::vector<double> x(model.feature_layout.size(), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(predict_significance(x, model));
}
BENCHMARK(BM_SignificanceInference);
BENCHMARK_MAIN();
