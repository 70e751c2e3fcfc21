#include "xrt/perfbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "xrt/errors.hpp"
#include "xrt/grid.hpp"
#include "xrt/intersect2d.hpp"
#include "xrt/intersect3d.hpp"
#include "xrt/projector.hpp"

namespace xrt::perf {
namespace {

using Clock = std::chrono::steady_clock;

void check_args(int dim, std::int64_t n) {
  if (dim != 2 && dim != 3) throw ValidationError("bench dimension must be 2 or 3");
  if (n < 1) throw ValidationError("bench grid size must be >= 1");
}

ImageGrid cube(int dim, std::int64_t n) {
  return dim == 2 ? ImageGrid::make_2d(n, n) : ImageGrid::make_3d(n, n, n);
}

template <class Ray, class Fn>
RowBenchReport run(const std::vector<Ray>& rays, const ImageGrid& grid, Fn&& kernel) {
  RowBenchReport rep;
  rep.rays = rays.size();

  std::uint64_t total = 0;
  for (const auto& ray : rays) {
    WorkCounter c;
    kernel(ray, grid, &c);
    total += c.candidates;
    rep.max_candidates = std::max(rep.max_candidates, c.candidates);
  }
  if (!rays.empty()) rep.mean_candidates = static_cast<double>(total) / rays.size();

  // Median over repeated passes of per-row mean time.
  constexpr int kPasses = 5;
  std::vector<double> per_row;
  std::size_t sink = 0;
  for (int p = 0; p < kPasses && !rays.empty(); ++p) {
    const auto t0 = Clock::now();
    for (const auto& ray : rays) sink += kernel(ray, grid, nullptr).size();
    const auto t1 = Clock::now();
    per_row.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / rays.size());
  }
  if (!per_row.empty()) {
    std::nth_element(per_row.begin(), per_row.begin() + per_row.size() / 2, per_row.end());
    rep.median_ns_per_row = per_row[per_row.size() / 2];
  }
  volatile std::size_t keep = sink;
  (void)keep;
  return rep;
}

}  // namespace

std::vector<ParallelRay2D> sample_rays_2d(std::int64_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double r = n * std::numbers::sqrt2 / 2.0;
  std::uniform_real_distribution<double> s(-r, r), phi(0.0, std::numbers::pi);
  std::vector<ParallelRay2D> out(count);
  for (auto& ray : out) ray = {s(rng), phi(rng)};
  return out;
}

std::vector<ParallelRay3D> sample_rays_3d(std::int64_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double r = n * std::sqrt(3.0) / 2.0;
  std::uniform_real_distribution<double> s(-r, r), phi1(0.0, 2.0 * std::numbers::pi),
      phi2(0.0, std::numbers::pi / 2.0);
  std::vector<ParallelRay3D> out(count);
  for (auto& ray : out) {
    const double a = s(rng), b = s(rng), p1 = phi1(rng), p2 = phi2(rng);
    ray = {a, b, p1, p2};
  }
  return out;
}

RowBenchReport bench_row(int dim, std::int64_t n, std::size_t ray_count, std::uint64_t seed) {
  check_args(dim, n);
  const ImageGrid grid = cube(dim, n);
  RowBenchReport rep;
  if (dim == 2) {
    rep = run(sample_rays_2d(n, ray_count, seed), grid,
              [](const ParallelRay2D& r, const ImageGrid& g, WorkCounter* c) {
                return c ? intersect_row_2d(r, g, *c) : intersect_row_2d(r, g);
              });
  } else {
    rep = run(sample_rays_3d(n, ray_count, seed), grid,
              [](const ParallelRay3D& r, const ImageGrid& g, WorkCounter* c) {
                return c ? intersect_row_3d(r, g, *c) : intersect_row_3d(r, g);
              });
  }
  rep.dim = dim;
  rep.n = n;
  rep.oracle_candidates = static_cast<std::uint64_t>(grid.unit_count());
  return rep;
}

std::vector<ScalingPoint> parallel_scaling(int dim, std::int64_t n, std::size_t ray_count,
                                           const std::vector<unsigned>& threads,
                                           std::uint64_t seed) {
  check_args(dim, n);
  const ImageGrid grid = cube(dim, n);
  RaySet rays(grid);
  if (dim == 2) {
    for (const auto& r : sample_rays_2d(n, ray_count, seed)) rays.add(Parallel2D{r.s, r.phi});
  } else {
    for (const auto& r : sample_rays_3d(n, ray_count, seed)) {
      rays.add(Parallel3D{r.s1, r.s2, r.phi1, r.phi2});
    }
  }

  std::vector<ScalingPoint> out;
  for (unsigned t : threads) {
    const auto t0 = Clock::now();
    const ProjectionMatrix m = assemble_matrix(rays, grid, {t});
    const auto t1 = Clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    out.push_back({t, secs > 0.0 ? m.n_rows() / secs : 0.0});
  }
  return out;
}

std::string format_reports(const std::vector<RowBenchReport>& reports) {
  std::ostringstream o;
  o << std::left << std::setw(4) << "dim" << std::right << std::setw(6) << "N" << std::setw(8)
    << "rays" << std::setw(14) << "ns/row" << std::setw(12) << "mean cand" << std::setw(10)
    << "max cand" << std::setw(10) << "max/N" << std::setw(14) << "oracle cand" << '\n';
  o << std::fixed;
  for (const auto& r : reports) {
    o << std::left << std::setw(4) << r.dim << std::right << std::setw(6) << r.n << std::setw(8)
      << r.rays << std::setw(14) << std::setprecision(1) << r.median_ns_per_row << std::setw(12)
      << std::setprecision(2) << r.mean_candidates << std::setw(10) << r.max_candidates
      << std::setw(10) << std::setprecision(3) << r.max_candidates_per_n() << std::setw(14)
      << r.oracle_candidates << '\n';
  }
  return o.str();
}

std::string format_scaling(const std::vector<ScalingPoint>& points) {
  std::ostringstream o;
  o << std::setw(8) << "threads" << std::setw(16) << "rows/s" << '\n' << std::fixed;
  for (const auto& p : points) {
    o << std::setw(8) << p.threads << std::setw(16) << std::setprecision(0) << p.rows_per_second
      << '\n';
  }
  return o.str();
}

}  // namespace xrt::perf
