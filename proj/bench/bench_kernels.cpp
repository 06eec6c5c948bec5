// Serial reference kernels against the FFT / OpenMP paths.

#include <benchmark/benchmark.h>

#include <memory>

#include "kforms/characters.hpp"
#include "kforms/congruence.hpp"
#include "kforms/dft.hpp"
#include "kforms/kloosterman.hpp"
#include "kforms/parallel.hpp"
#include "kforms/trilinear.hpp"

using namespace kforms;

namespace {

ComplexVector signal(std::int64_t q) {
  ComplexVector f(static_cast<std::size_t>(q));
  for (std::int64_t i = 0; i < q; ++i) f[i] = cplx(std::cos(0.3 * i), std::sin(0.7 * i));
  return f;
}

void BM_dft_naive(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  auto f = signal(ring.q());
  for (auto _ : st) benchmark::DoNotOptimize(dft_naive(ring, f, Direction::forward));
}

void BM_dft_fast(benchmark::State& st) {
  auto f = signal(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(dft_fast(f, Direction::forward));
}

void BM_double_naive(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(double_naive(ring, 3, 5, 7));
}

void BM_double_fast(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(double_fast(ring, 3, 5, 7));
}

TrilinearInstance bench_instance(std::int64_t q) {
  auto ring = std::make_shared<const ResidueRing>(q);
  const IntervalSet l(0, 8), m(0, 8), n(0, 8);
  return make_instance(ring, make_weights(*ring, l, WeightMode::phase, 1), m, n);
}

void BM_trilinear_naive(benchmark::State& st) {
  auto inst = bench_instance(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(trilinear_naive(inst));
}

void BM_trilinear_fast(benchmark::State& st) {
  auto inst = bench_instance(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(trilinear_fast(inst));
}

void BM_reciprocal_tally(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reciprocal_tally_naive(ring, 2, ring.q() / 2));
}

void BM_reciprocal_convolution(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reciprocal_count_mod(ring, 2, ring.q() / 2));
}

void BM_fourth_moment_characters(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  auto table = build_characters(ring);
  const IntervalSet h(0, ring.q() / 3);
  for (auto _ : st) benchmark::DoNotOptimize(fourth_moment(table, h));
}

void BM_fourth_moment_count(benchmark::State& st) {
  ResidueRing ring(st.range(0));
  const IntervalSet h(0, ring.q() / 3);
  for (auto _ : st) benchmark::DoNotOptimize(fourth_moment_by_count(ring, h));
}

}  // namespace

BENCHMARK(BM_dft_naive)->Arg(257)->Arg(1009);
BENCHMARK(BM_dft_fast)->Arg(257)->Arg(1009);
BENCHMARK(BM_double_naive)->Arg(211)->Arg(1009);
BENCHMARK(BM_double_fast)->Arg(211)->Arg(1009);
BENCHMARK(BM_trilinear_naive)->Arg(101);
BENCHMARK(BM_trilinear_fast)->Arg(101);
BENCHMARK(BM_reciprocal_tally)->Arg(101);
BENCHMARK(BM_reciprocal_convolution)->Arg(101);
BENCHMARK(BM_fourth_moment_characters)->Arg(211);
BENCHMARK(BM_fourth_moment_count)->Arg(211);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
