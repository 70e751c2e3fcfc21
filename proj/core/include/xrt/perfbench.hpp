#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xrt/geometry.hpp"

namespace xrt::perf {

/// Random canonical rays whose offsets fall inside the grid's circumscribed
/// radius, so most of them cross an n^dim grid.
std::vector<ParallelRay2D> sample_rays_2d(std::int64_t n, std::size_t count, std::uint64_t seed);
std::vector<ParallelRay3D> sample_rays_3d(std::int64_t n, std::size_t count, std::uint64_t seed);

struct RowBenchReport {
  int dim = 2;
  std::int64_t n = 0;
  std::size_t rays = 0;
  double median_ns_per_row = 0.0;
  double mean_candidates = 0.0;
  std::uint64_t max_candidates = 0;
  /// Boxes the clipping oracle examines per ray: n^dim.
  std::uint64_t oracle_candidates = 0;

  /// max_candidates / n.
  double max_candidates_per_n() const noexcept {
    return n > 0 ? static_cast<double>(max_candidates) / static_cast<double>(n) : 0.0;
  }
};

/// Times and counts row computation on an n^dim grid. Timing uses the
/// uncounted kernel; candidates come from the counted one.
RowBenchReport bench_row(int dim, std::int64_t n, std::size_t ray_count,
                         std::uint64_t seed = 1);

struct ScalingPoint {
  unsigned threads = 1;
  double rows_per_second = 0.0;
};

/// Matrix assembly throughput at each worker count.
std::vector<ScalingPoint> parallel_scaling(int dim, std::int64_t n, std::size_t ray_count,
                                           const std::vector<unsigned>& threads,
                                           std::uint64_t seed = 1);

std::string format_reports(const std::vector<RowBenchReport>& reports);
std::string format_scaling(const std::vector<ScalingPoint>& points);

}  // namespace xrt::perf
