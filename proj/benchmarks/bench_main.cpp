// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "blockset/braid.hpp"

using namespace blockset;

static void BM_EnumerateLines(benchmark::State& state) {
  Space s(SpaceKind::projective, static_cast<int>(state.range(0)), static_cast<std::uint32_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_flats(s, 1).size());
}
BENCHMARK(BM_EnumerateLines)->Args({2, 7})->Args({3, 4})->Args({3, 7});

static void BM_BraidLines(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(braid_lines(q).size());
}
BENCHMARK(BM_BraidLines)->Arg(4)->Arg(5)->Arg(7);

static void BM_NontrivialPlane(benchmark::State& state) {
  Space s(SpaceKind::projective, 2, static_cast<std::uint32_t>(state.range(0)));
  const auto inst = build_instance(s, Arrangement(s), 1, Scope::contained);
  for (auto _ : state) benchmark::DoNotOptimize(min_blocking_set(inst, true).size);
}
BENCHMARK(BM_NontrivialPlane)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_BoseBurton(benchmark::State& state) {
  Space s(SpaceKind::projective, 3, 3);
  const auto inst = build_instance(s, Arrangement(s), static_cast<int>(state.range(0)), Scope::contained);
  for (auto _ : state) benchmark::DoNotOptimize(min_blocking_set(inst).size);
}
BENCHMARK(BM_BoseBurton)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
