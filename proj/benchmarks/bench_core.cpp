#include <benchmark/benchmark.h>

#include <random>

#include "orthoinv/invariants.hpp"
#include "orthoinv/matgroup.hpp"
#include "orthoinv/steenrod.hpp"

using namespace orthoinv;

static void BM_FieldMul(benchmark::State& st) {
  auto F = Field::get(static_cast<std::uint32_t>(st.range(0)));
  std::mt19937 rng(1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = static_cast<Elem>(rng() % F->q());
  Elem acc = 1;
  for (auto _ : st) {
    for (auto x : xs) acc = F->add(F->mul(acc, x), 1);
    benchmark::DoNotOptimize(acc);
  }
  st.SetItemsProcessed(st.iterations() * xs.size());
}
BENCHMARK(BM_FieldMul)->Arg(3)->Arg(9)->Arg(243);

static void BM_XiPower(benchmark::State& st) {
  auto cat = Catalog::get(static_cast<int>(st.range(0)), 3);
  const auto& xi = cat->xi(1);
  for (auto _ : st) benchmark::DoNotOptimize(xi.pow(static_cast<std::uint64_t>(st.range(1))));
}
BENCHMARK(BM_XiPower)->Args({2, 4})->Args({2, 8})->Args({3, 4});

static void BM_Act(benchmark::State& st) {
  auto cat = Catalog::get(2, 3);
  const auto& u = cat->u();
  auto g = cat->gens(GroupKind::oplus).front();
  for (auto _ : st) benchmark::DoNotOptimize(act(u, g));
}
BENCHMARK(BM_Act);

static void BM_SteenrodSeries(benchmark::State& st) {
  auto cat = Catalog::get(2, static_cast<std::uint32_t>(st.range(0)));
  const auto& u = cat->u();
  for (auto _ : st) benchmark::DoNotOptimize(steenrod_series(u));
}
BENCHMARK(BM_SteenrodSeries)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Closure(benchmark::State& st) {
  auto g = generators(GroupKind::oplus, 2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(closure(g));
}
BENCHMARK(BM_Closure)->Unit(benchmark::kMillisecond);

static void BM_Norm(benchmark::State& st) {
  auto m = static_cast<int>(st.range(0));
  auto cat = Catalog::get(m, 3);
  auto g = generators(GroupKind::sylow, m, 3);
  for (auto _ : st) benchmark::DoNotOptimize(norm(cat->y(1), g));
}
BENCHMARK(BM_Norm)->Arg(2)->Unit(benchmark::kMillisecond);
