#include <benchmark/benchmark.h>

#include "orthoinv/invariants.hpp"
#include "orthoinv/khovanskii.hpp"
#include "orthoinv/solver.hpp"

using namespace orthoinv;

static void BM_InvariantDimension(benchmark::State& st) {
  auto cat = Catalog::get(2, 3);
  const auto& g = cat->gens(GroupKind::sylow);
  auto d = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(invariant_dimension(g, d, 2, 3));
}
BENCHMARK(BM_InvariantDimension)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_ExpressOverXi(benchmark::State& st) {
  auto cat = Catalog::get(2, 3);
  auto f = cat->u() * cat->d(1);
  for (auto _ : st) benchmark::DoNotOptimize(express_over_xi(f, 3));
}
BENCHMARK(BM_ExpressOverXi)->Unit(benchmark::kMillisecond);

static void BM_SubductHookTetes(benchmark::State& st) {
  auto kd = khovanskii_data(GroupKind::hook, 2, 3);
  std::vector<Polynomial> gens, tetes;
  for (auto& g : kd.gens) gens.push_back(g.build());
  for (auto& t : kd.tetes) tetes.push_back(t.build());
  for (auto _ : st)
    for (const auto& t : tetes) benchmark::DoNotOptimize(subduct(t, gens));
}
BENCHMARK(BM_SubductHookTetes)->Unit(benchmark::kMillisecond);

static void BM_KhovanskiiSylow(benchmark::State& st) {
  auto kd = khovanskii_data(GroupKind::sylow, 2, 3);
  auto D = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(khovanskii_verify(kd, D));
}
BENCHMARK(BM_KhovanskiiSylow)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
