// Micro-benchmarks for path evaluation and index computation.
#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <vector>

#include "symhom/crossings.hpp"
#include "symhom/symplectic.hpp"

using symhom::symplin::SymplecticPath;

namespace {

constexpr double kPi = 3.14159265358979323846;

void bm_rotation_index_closed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymplecticPath p = SymplecticPath::rotation(n, 4.5 * kPi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symhom::symplin::rs_index(p));
  }
}
BENCHMARK(bm_rotation_index_closed)->Arg(1)->Arg(2)->Arg(4);

void bm_rotation_index_sampled(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SymplecticPath closed = SymplecticPath::rotation(1, 4.5 * kPi);
  std::vector<double> grid(m);
  std::vector<Eigen::MatrixXd> mats(m);
  for (int i = 0; i < m; ++i) {
    grid[i] = static_cast<double>(i) / (m - 1);
    mats[i] = closed.eval(grid[i]);
  }
  const SymplecticPath p = SymplecticPath::sampled(grid, mats);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symhom::symplin::rs_index(p));
  }
}
BENCHMARK(bm_rotation_index_sampled)->Arg(129)->Arg(513)->Arg(2049);

void bm_eval(benchmark::State& state) {
  const SymplecticPath p = SymplecticPath::sphere_orbit_path(2, 3, 1.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.001;
    if (t > 1.0) t -= 1.0;
    benchmark::DoNotOptimize(p.eval(t));
  }
}
BENCHMARK(bm_eval);

}  // namespace

BENCHMARK_MAIN();
