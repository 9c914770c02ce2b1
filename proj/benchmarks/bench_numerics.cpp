#include "nhjc/biortho.hpp"
#include "nhjc/model.hpp"
#include "nhjc/numerics.hpp"

#include <benchmark/benchmark.h>

using namespace nhjc;

namespace {

Mat2 sample_block() { return model::build_block({1.0, 5.0, 3.0, 2}).entries; }

void BM_Eig2(benchmark::State& state) {
  const Mat2 m = sample_block();
  for (auto _ : state) benchmark::DoNotOptimize(numerics::eig2(m));
}
BENCHMARK(BM_Eig2);

void BM_SqrtHpd(benchmark::State& state) {
  const Mat2 g = biortho::metric({1.0, 5.0, 1.0, 0}).entries;
  for (auto _ : state) benchmark::DoNotOptimize(numerics::sqrt_hpd(g));
}
BENCHMARK(BM_SqrtHpd);

void BM_Expm2(benchmark::State& state) {
  const Mat2 m = Complex(0.0, -1.0) * sample_block();
  for (auto _ : state) benchmark::DoNotOptimize(numerics::expm2(m, 0.37));
}
BENCHMARK(BM_Expm2);

void BM_SpectrumClosedForm(benchmark::State& state) {
  const ModelParams p{1.0, 5.0, 3.0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(model::spectrum_closed_form(p));
}
BENCHMARK(BM_SpectrumClosedForm);

void BM_Intertwiner(benchmark::State& state) {
  const ModelParams p{1.0, 5.0, state.range(0) == 0 ? 1.0 : 4.0, 0};
  for (auto _ : state) benchmark::DoNotOptimize(biortho::intertwiner(p));
}
BENCHMARK(BM_Intertwiner)->Arg(0)->Arg(1);

}  // namespace
