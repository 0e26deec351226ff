#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "ocs/catalog.hpp"
#include "ocs/simulator.hpp"

namespace {

std::string slurp(const char* name) {
  std::ifstream in(std::string(OCS_SEED_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ocs::Taxonomy& taxonomy() {
  static const ocs::Taxonomy t = ocs::load_taxonomy(slurp("taxonomy.tax"));
  return t;
}

std::vector<ocs::NamedClass> random_names(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<ocs::NamedClass> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    for (std::size_t k = 0, len = 8 + rng() % 16; k < len; ++k) s += static_cast<char>('a' + rng() % 20);
    out.push_back({"c" + std::to_string(i), s});
  }
  return out;
}

void BM_OvertureRun(benchmark::State& state) {
  auto doc = ocs::parse_method(slurp("overture.method"), taxonomy());
  for (auto _ : state) benchmark::DoNotOptimize(ocs::run(taxonomy(), doc));
}
BENCHMARK(BM_OvertureRun);

void BM_ParseOverture(benchmark::State& state) {
  auto text = slurp("overture.method");
  for (auto _ : state) benchmark::DoNotOptimize(ocs::parse_method(text, taxonomy()));
}
BENCHMARK(BM_ParseOverture);

void BM_AutocompleteSeed(benchmark::State& state) {
  auto idx = ocs::build_index(taxonomy());
  for (auto _ : state) {
    benchmark::DoNotOptimize(idx.autocomplete("co"));
    benchmark::DoNotOptimize(idx.autocomplete("count"));
  }
}
BENCHMARK(BM_AutocompleteSeed);

void BM_AutocompleteLarge(benchmark::State& state) {
  auto idx = ocs::NameIndex::build(random_names(static_cast<std::size_t>(state.range(0)), 1), {});
  for (auto _ : state) benchmark::DoNotOptimize(idx.autocomplete("abcde"));
}
BENCHMARK(BM_AutocompleteLarge)->Arg(440)->Arg(4400);

void BM_SubstringCheck(benchmark::State& state) {
  auto names = random_names(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    auto idx = ocs::NameIndex::build(names, {});
    benchmark::DoNotOptimize(idx.check_substring_free());
  }
}
BENCHMARK(BM_SubstringCheck)->Arg(440)->Arg(4400);

void BM_ValidateSeedCorpus(benchmark::State& state) {
  auto corpus = ocs::load_corpus(OCS_SEED_DIR);
  for (auto _ : state) benchmark::DoNotOptimize(ocs::validate_corpus(corpus));
}
BENCHMARK(BM_ValidateSeedCorpus);

}  // namespace

BENCHMARK_MAIN();
