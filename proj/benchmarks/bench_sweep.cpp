#include "nhjc/export.hpp"
#include "nhjc/scan.hpp"

#include <benchmark/benchmark.h>

#include <sstream>

using namespace nhjc;

namespace {

void BM_SweepFig2a(benchmark::State& state) {
  const auto spec = scan::preset("fig2a");
  for (auto _ : state) benchmark::DoNotOptimize(scan::run_sweep(spec, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_SweepFig2a)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SweepFig3Entropy(benchmark::State& state) {
  auto spec = scan::preset("fig3");
  spec.quantities = {scan::Quantity::MetricNorm, scan::Quantity::Entropy};
  for (auto _ : state) benchmark::DoNotOptimize(scan::run_sweep(spec, 1));
}
BENCHMARK(BM_SweepFig3Entropy)->Unit(benchmark::kMillisecond);

void BM_WriteCsvFig2a(benchmark::State& state) {
  const auto spec = scan::preset("fig2a");
  const auto cells = scan::run_sweep(spec);
  for (auto _ : state) {
    std::ostringstream out;
    scan::write_csv(cells, out);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_WriteCsvFig2a)->Unit(benchmark::kMillisecond);

}  // namespace
