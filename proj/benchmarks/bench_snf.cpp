// Micro-benchmarks for the exact integer linear algebra kernel.
#include <benchmark/benchmark.h>

#include <random>

#include "symhom/domains.hpp"
#include "symhom/homology.hpp"
#include "symhom/snf.hpp"

using symhom::chainalg::IntMat;

namespace {

IntMat random_matrix(std::mt19937& rng, int rows, int cols, int max_abs) {
  std::uniform_int_distribution<int> entry(-max_abs, max_abs);
  IntMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = entry(rng);
  return m;
}

void bm_snf(benchmark::State& state) {
  std::mt19937 rng(42u);
  const int n = static_cast<int>(state.range(0));
  const IntMat m = random_matrix(rng, n, n, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symhom::chainalg::snf(m));
  }
}
BENCHMARK(bm_snf)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_det_bareiss(benchmark::State& state) {
  std::mt19937 rng(43u);
  const int n = static_cast<int>(state.range(0));
  const IntMat m = random_matrix(rng, n, n, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symhom::chainalg::det_bareiss(m));
  }
}
BENCHMARK(bm_det_bareiss)->Arg(8)->Arg(16)->Arg(32);

void bm_ellipsoid_homology(benchmark::State& state) {
  using symhom::ActionValue;
  using symhom::Rational;
  const symhom::domains::EllipsoidSpec e(
      {Rational(1), Rational(4, 3), Rational(3, 2)});
  const ActionValue bound =
      ActionValue::pi_rational(Rational(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(symhom::chainalg::homology(
        symhom::domains::ellipsoid_complex(e, bound)));
  }
}
BENCHMARK(bm_ellipsoid_homology)->Arg(5)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
