#include "xrt/projector.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "xrt/errors.hpp"
#include "xrt/intersect2d.hpp"
#include "xrt/intersect3d.hpp"

namespace xrt {
namespace {

unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (work < n) n = static_cast<unsigned>(std::max<std::size_t>(work, 1));
  return n;
}

// Splits [0, n) into contiguous chunks, one per worker.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers = worker_count(threads, n);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    if (begin == end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

void check_same_grid(const ImageGrid& a, const ImageGrid& b, const char* what) {
  if (!(a == b)) throw ValidationError(std::string(what) + ": grid mismatch");
}

}  // namespace

Image::Image(ImageGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.unit_count()) {
    throw ValidationError("image has " + std::to_string(values_.size()) +
                          " values, grid needs " + std::to_string(grid_.unit_count()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("image values must be finite");
  }
}

Image Image::zeros(const ImageGrid& grid) {
  return Image(grid, std::vector<double>(grid.unit_count(), 0.0));
}

RaySet::RaySet(ImageGrid grid) : grid_(std::move(grid)) {}

RaySet::RaySet(ImageGrid grid, std::vector<BeamSpec> specs) : grid_(std::move(grid)) {
  specs_.reserve(specs.size());
  for (const auto& s : specs) add(s);
}

void RaySet::add(const BeamSpec& spec) {
  validate(spec);
  if (beam_dimension(spec) != grid_.dim()) {
    throw ValidationError("beam dimension does not match the grid");
  }
  specs_.push_back(spec);
}

ResolvedRay resolve_ray(const BeamSpec& spec, const ImageGrid& grid) {
  validate(spec);
  if (beam_dimension(spec) != grid.dim()) {
    throw ValidationError("beam dimension does not match the grid");
  }
  auto finish2 = [&](double s, double phi) {
    const auto c = normalize_to_canonical(canonicalize_2d(s, phi), grid);
    return ResolvedRay{c.ray, c.length_scale};
  };
  auto finish3 = [&](const RawParallel3D& r) {
    const auto c = normalize_to_canonical(canonicalize_3d(r.s1, r.s2, r.phi1, r.phi2), grid);
    return ResolvedRay{c.ray, c.length_scale};
  };
  struct Visitor {
    decltype(finish2)& f2;
    decltype(finish3)& f3;
    ResolvedRay operator()(const Parallel2D& b) const { return f2(b.s, b.phi); }
    ResolvedRay operator()(const FanEquiangular& b) const {
      const auto r = fan_equiangular_to_parallel(b.D, b.alpha, b.gamma);
      return f2(r.s, r.phi);
    }
    ResolvedRay operator()(const FanEquispaced& b) const {
      const auto r = fan_equispaced_to_parallel(b.D, b.alpha, b.t);
      return f2(r.s, r.phi);
    }
    ResolvedRay operator()(const Parallel3D& b) const {
      return f3(RawParallel3D{b.s1, b.s2, b.phi1, b.phi2});
    }
    ResolvedRay operator()(const ConeEquiangular& b) const {
      return f3(cone_equiangular_to_parallel(b.D, b.phi1p, b.alpha, b.beta));
    }
    ResolvedRay operator()(const ConeEquispaced& b) const {
      return f3(cone_equispaced_to_parallel(b.D, b.phi1p, b.t, b.h));
    }
    ResolvedRay operator()(const HelicalEquiangular& b) const {
      return f3(helical_to_parallel(b));
    }
    ResolvedRay operator()(const HelicalEquispaced& b) const {
      return f3(helical_to_parallel(b));
    }
  };
  return std::visit(Visitor{finish2, finish3}, spec);
}

SparseRow compute_row(const BeamSpec& spec, const ImageGrid& grid) {
  const ResolvedRay resolved = resolve_ray(spec, grid);
  SparseRow row = std::visit(
      [&](const auto& ray) -> SparseRow {
        using T = std::decay_t<decltype(ray)>;
        if constexpr (std::is_same_v<T, ParallelRay2D>) {
          return intersect_row_2d(ray, grid);
        } else {
          return intersect_row_3d(ray, grid);
        }
      },
      resolved.ray);
  if (resolved.length_scale != 1.0) {
    for (auto& r : row.records) r.length *= resolved.length_scale;
  }
  return row;
}

double row_dot(const SparseRow& row, std::span<const double> values) {
  double sum = 0.0;
  for (const auto& r : row.records) sum += r.length * values[r.flat_index];
  return sum;
}

std::size_t ProjectionMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

std::vector<double> ProjectionMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_cols) throw ValidationError("multiply: vector length != n_cols");
  std::vector<double> y(rows.size());
  for (std::size_t m = 0; m < rows.size(); ++m) y[m] = row_dot(rows[m], x);
  return y;
}

std::vector<double> ProjectionMatrix::multiply_transpose(std::span<const double> y,
                                                         unsigned threads) const {
  if (y.size() != rows.size()) {
    throw ValidationError("multiply_transpose: vector length != n_rows");
  }
  std::vector<double> x(n_cols, 0.0);
  // Each worker owns a column range and walks the rows in order, so every
  // column accumulates in row order independent of the worker count.
  parallel_chunks(n_cols, threads, [&](std::size_t col_begin, std::size_t col_end) {
    for (std::size_t m = 0; m < rows.size(); ++m) {
      const auto& recs = rows[m].records;
      auto it = std::lower_bound(recs.begin(), recs.end(), col_begin,
                                 [](const IntersectionRecord& r, std::size_t c) {
                                   return r.flat_index < c;
                                 });
      for (; it != recs.end() && it->flat_index < col_end; ++it) {
        x[it->flat_index] += it->length * y[m];
      }
    }
  });
  return x;
}

ProjectionMatrix assemble_matrix(const RaySet& rays, const ImageGrid& grid,
                                 ExecutionOptions exec) {
  check_same_grid(rays.grid(), grid, "assemble_matrix");
  ProjectionMatrix matrix;
  matrix.n_cols = grid.unit_count();
  matrix.scale_factor = grid.scale();
  matrix.rows.resize(rays.size());
  const auto& specs = rays.specs();
  parallel_chunks(specs.size(), exec.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) matrix.rows[m] = compute_row(specs[m], grid);
  });
  return matrix;
}

Sinogram forward_project(const Image& image, const RaySet& rays, ExecutionOptions exec) {
  check_same_grid(image.grid(), rays.grid(), "forward_project");
  Sinogram sino;
  sino.values.resize(rays.size());
  const auto& specs = rays.specs();
  const auto values = image.values();
  parallel_chunks(specs.size(), exec.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      sino.values[m] = row_dot(compute_row(specs[m], image.grid()), values);
    }
  });
  return sino;
}

Image back_project(const Sinogram& sino, const RaySet& rays, const ImageGrid& grid,
                   ExecutionOptions exec) {
  check_same_grid(rays.grid(), grid, "back_project");
  if (sino.ray_count() != rays.size()) {
    throw ValidationError("back_project: sinogram has " + std::to_string(sino.ray_count()) +
                          " values for " + std::to_string(rays.size()) + " rays");
  }
  for (double v : sino.values) {
    if (!std::isfinite(v)) throw ValidationError("sinogram values must be finite");
  }
  const ProjectionMatrix matrix = assemble_matrix(rays, grid, exec);
  return Image(grid, matrix.multiply_transpose(sino.values, exec.threads));
}

}  // namespace xrt
