#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rfiqkd/keyrate.hpp"

namespace {

using namespace rfiqkd;

std::vector<std::pair<double, double>> grid_points() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> q(0.0, kRfiQberLimit), c(0.0, 2.0);
  std::vector<std::pair<double, double>> pts(1024);
  for (auto& p : pts) p = {q(rng), c(rng)};
  return pts;
}

void BM_RfiKeyRate(benchmark::State& state) {
  const auto pts = grid_points();
  const auto formula = state.range(0) == 0 ? EveFormula::proof : EveFormula::typeset;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [q, c] = pts[i++ & 1023];
    benchmark::DoNotOptimize(rfi_key_rate(q, c, formula));
  }
}
BENCHMARK(BM_RfiKeyRate)->Arg(0)->Arg(1);

void BM_AnalyzeWindow(benchmark::State& state) {
  TallyMatrix t;
  for (const Basis a : kAllBases) {
    for (const Basis b : kAllBases) {
      t.at(a, 0, b, 0) = 90;
      t.at(a, 0, b, 1) = 10;
      t.at(a, 1, b, 0) = 12;
      t.at(a, 1, b, 1) = 88;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_rfi(t));
    benchmark::DoNotOptimize(analyze_bb84(t));
  }
}
BENCHMARK(BM_AnalyzeWindow);

}  // namespace
BENCHMARK_MAIN();
