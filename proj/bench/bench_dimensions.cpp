#include <benchmark/benchmark.h>

#include <map>

#include "cpnet/classes.hpp"

namespace {

using cpnet::Completeness;

const cpnet::ConceptClass& cached_class(int n, int k, bool complete) {
  static std::map<std::tuple<int, int, bool>, cpnet::ConceptClass> cache;
  const auto key = std::make_tuple(n, k, complete);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const cpnet::ClassSpec spec{n, 2, k,
                                complete ? Completeness::CompleteOnly : Completeness::AllowIncomplete};
    it = cache.emplace(key, cpnet::enumerate_class(spec)).first;
  }
  return it->second;
}

void BM_VcdParallel(benchmark::State& state) {
  const auto& cls = cached_class(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                 state.range(2) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(cpnet::vcd(cls));
  state.counters["concepts"] = static_cast<double>(cls.size());
}

void BM_VcdReference(benchmark::State& state) {
  const auto& cls = cached_class(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                 state.range(2) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(cpnet::vcd_reference(cls));
  state.counters["concepts"] = static_cast<double>(cls.size());
}

void BM_TdAllParallel(benchmark::State& state) {
  const auto& cls = cached_class(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                 state.range(2) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(cpnet::td_all(cls));
  state.counters["concepts"] = static_cast<double>(cls.size());
}

void BM_TdAllReference(benchmark::State& state) {
  const auto& cls = cached_class(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                 state.range(2) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(cpnet::td_all_reference(cls));
  state.counters["concepts"] = static_cast<double>(cls.size());
}

// Arguments: n, k, complete.
void Classes(benchmark::internal::Benchmark* b) {
  b->Args({3, 1, 1})->Args({3, 2, 1})->Args({2, 1, 0})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_VcdParallel)->Apply(Classes);
BENCHMARK(BM_VcdReference)->Apply(Classes);
BENCHMARK(BM_TdAllParallel)->Apply(Classes);
BENCHMARK(BM_TdAllReference)->Apply(Classes);

BENCHMARK_MAIN();
