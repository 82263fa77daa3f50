// Parallel library kernels against the serial reference implementation.
#include <benchmark/benchmark.h>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/reference.hpp"

using namespace manifold_splines;

namespace {

const kernel_spec& sphere_kernel() {
  static const kernel_spec k = preset("rss-s2-m2");
  return k;
}

system_ptr sphere_system(std::size_t n) {
  return saddle_system::assemble(sphere_kernel(), aux_for(sphere_kernel()), fibonacci_sphere(n));
}

void bm_gram_parallel(benchmark::State& state) {
  const point_set pts = fibonacci_sphere(static_cast<std::size_t>(state.range(0)));
  const kernel_evaluator k(sphere_kernel());
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(k, pts));
}

void bm_gram_serial(benchmark::State& state) {
  const point_set pts = fibonacci_sphere(static_cast<std::size_t>(state.range(0)));
  const kernel_evaluator k(sphere_kernel());
  for (auto _ : state) benchmark::DoNotOptimize(reference::gram_matrix(k, pts));
}

void bm_separation_parallel(benchmark::State& state) {
  const point_set pts = random_points(manifold::sphere2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(separation_distance(pts));
}

void bm_separation_serial(benchmark::State& state) {
  const point_set pts = random_points(manifold::sphere2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::separation_distance(pts));
}

void bm_fill_parallel(benchmark::State& state) {
  const point_set pts = fibonacci_sphere(static_cast<std::size_t>(state.range(0)));
  const point_set probe = random_points(manifold::sphere2, 10 * pts.size(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fill_distance(pts, probe));
}

void bm_fill_serial(benchmark::State& state) {
  const point_set pts = fibonacci_sphere(static_cast<std::size_t>(state.range(0)));
  const point_set probe = random_points(manifold::sphere2, 10 * pts.size(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::fill_distance(pts, probe));
}

void bm_lagrange_parallel(benchmark::State& state) {
  const auto sys = sphere_system(static_cast<std::size_t>(state.range(0)));
  const point_set probe = random_points(manifold::sphere2, 2000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lagrange_matrix(*sys, probe));
}

void bm_lagrange_serial(benchmark::State& state) {
  const auto sys = sphere_system(static_cast<std::size_t>(state.range(0)));
  const point_set probe = random_points(manifold::sphere2, 2000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(reference::lagrange_matrix(*sys, probe));
}

void bm_lebesgue_parallel(benchmark::State& state) {
  const auto sys = sphere_system(static_cast<std::size_t>(state.range(0)));
  const point_set probe = random_points(manifold::sphere2, 10 * sys->centers().size(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(lebesgue_constant(*sys, probe).L);
}

void bm_lebesgue_serial(benchmark::State& state) {
  const auto sys = sphere_system(static_cast<std::size_t>(state.range(0)));
  const point_set probe = random_points(manifold::sphere2, 10 * sys->centers().size(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::lebesgue_constant(*sys, probe));
}

}  // namespace

BENCHMARK(bm_gram_parallel)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gram_serial)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_separation_parallel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_separation_serial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fill_parallel)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fill_serial)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lagrange_parallel)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lagrange_serial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lebesgue_parallel)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lebesgue_serial)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
