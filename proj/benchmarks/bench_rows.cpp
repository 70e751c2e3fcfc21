#include <benchmark/benchmark.h>

#include "xrt/intersect2d.hpp"
#include "xrt/intersect3d.hpp"
#include "xrt/oracle.hpp"
#include "xrt/perfbench.hpp"
#include "xrt/projector.hpp"

namespace {

constexpr std::size_t kRays = 256;

void BM_Row2D(benchmark::State& state) {
  const auto n = state.range(0);
  const auto grid = xrt::ImageGrid::make_2d(n, n);
  const auto rays = xrt::perf::sample_rays_2d(n, kRays, 1);
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xrt::intersect_row_2d(rays[r++ % kRays], grid));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Row2D)->RangeMultiplier(2)->Range(64, 1024);

void BM_Row3D(benchmark::State& state) {
  const auto n = state.range(0);
  const auto grid = xrt::ImageGrid::make_3d(n, n, n);
  const auto rays = xrt::perf::sample_rays_3d(n, kRays, 1);
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xrt::intersect_row_3d(rays[r++ % kRays], grid));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Row3D)->RangeMultiplier(2)->Range(16, 256);

// Brute-force clipping for contrast; grows with N^d.
void BM_Oracle2D(benchmark::State& state) {
  const auto n = state.range(0);
  const auto grid = xrt::ImageGrid::make_2d(n, n);
  const auto rays = xrt::perf::sample_rays_2d(n, kRays, 1);
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xrt::oracle::oracle_row(rays[r++ % kRays], grid));
  }
}
BENCHMARK(BM_Oracle2D)->RangeMultiplier(2)->Range(64, 256);

void BM_Oracle3D(benchmark::State& state) {
  const auto n = state.range(0);
  const auto grid = xrt::ImageGrid::make_3d(n, n, n);
  const auto rays = xrt::perf::sample_rays_3d(n, kRays, 1);
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xrt::oracle::oracle_row(rays[r++ % kRays], grid));
  }
}
BENCHMARK(BM_Oracle3D)->RangeMultiplier(2)->Range(16, 64);

void BM_ForwardProject2D(benchmark::State& state) {
  const auto n = state.range(0);
  const auto grid = xrt::ImageGrid::make_2d(n, n);
  xrt::RaySet rays(grid);
  for (const auto& r : xrt::perf::sample_rays_2d(n, 4 * n, 3)) {
    rays.add(xrt::Parallel2D{r.s, r.phi});
  }
  const auto image = xrt::Image(grid, std::vector<double>(grid.unit_count(), 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(xrt::forward_project(image, rays));
  }
  state.SetItemsProcessed(state.iterations() * rays.size());
}
BENCHMARK(BM_ForwardProject2D)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
