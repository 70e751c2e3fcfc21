#include "xrt/grid.hpp"

#include <cmath>
#include <string>

#include "xrt/errors.hpp"

namespace xrt {
namespace {

void check_grid(std::int64_t nx, std::int64_t ny, std::int64_t nz, double scale,
                const Vec3& center) {
  if (nx < 1 || ny < 1 || nz < 1) throw ValidationError("grid counts must be >= 1");
  if (!std::isfinite(scale) || !(scale > 0.0)) {
    throw ValidationError("grid scale must be positive and finite");
  }
  for (double c : center) {
    if (!std::isfinite(c)) throw ValidationError("grid center must be finite");
  }
}

void require_dim(const ImageGrid& grid, int dim) {
  if (grid.dim() != dim) {
    throw ValidationError("expected a " + std::to_string(dim) + "D grid, got " +
                          std::to_string(grid.dim()) + "D");
  }
}

void check_axis(std::int64_t v, std::int64_t n, const char* name) {
  if (v < 0 || v >= n) {
    throw BoundsError(std::string(name) + "=" + std::to_string(v) + " outside [0, " +
                      std::to_string(n - 1) + "]");
  }
}

}  // namespace

ImageGrid ImageGrid::make_2d(std::int64_t nx, std::int64_t ny, double scale, Vec2 center) {
  ImageGrid g;
  g.center_ = {center[0], center[1], 0.0};
  check_grid(nx, ny, 1, scale, g.center_);
  g.dim_ = 2;
  g.nx_ = nx;
  g.ny_ = ny;
  g.nz_ = 1;
  g.scale_ = scale;
  return g;
}

ImageGrid ImageGrid::make_3d(std::int64_t nx, std::int64_t ny, std::int64_t nz, double scale,
                             Vec3 center) {
  check_grid(nx, ny, nz, scale, center);
  ImageGrid g;
  g.dim_ = 3;
  g.nx_ = nx;
  g.ny_ = ny;
  g.nz_ = nz;
  g.scale_ = scale;
  g.center_ = center;
  return g;
}

std::size_t flat_index(const UnitIndex2D& idx, const ImageGrid& grid) {
  require_dim(grid, 2);
  check_axis(idx.j, grid.ny(), "j");
  check_axis(idx.i, grid.nx(), "i");
  return static_cast<std::size_t>(idx.j * grid.nx() + idx.i);
}

std::size_t flat_index(const UnitIndex3D& idx, const ImageGrid& grid) {
  require_dim(grid, 3);
  check_axis(idx.k, grid.nz(), "k");
  check_axis(idx.j, grid.ny(), "j");
  check_axis(idx.i, grid.nx(), "i");
  return static_cast<std::size_t>((idx.k * grid.ny() + idx.j) * grid.nx() + idx.i);
}

UnitIndex2D unflat_index_2d(std::size_t flat, const ImageGrid& grid) {
  require_dim(grid, 2);
  if (flat >= grid.unit_count()) {
    throw BoundsError("flat index " + std::to_string(flat) + " outside grid");
  }
  const auto f = static_cast<std::int64_t>(flat);
  return {f / grid.nx(), f % grid.nx()};
}

UnitIndex3D unflat_index_3d(std::size_t flat, const ImageGrid& grid) {
  require_dim(grid, 3);
  if (flat >= grid.unit_count()) {
    throw BoundsError("flat index " + std::to_string(flat) + " outside grid");
  }
  const auto f = static_cast<std::int64_t>(flat);
  const std::int64_t slice = grid.nx() * grid.ny();
  return {f / slice, (f % slice) / grid.nx(), f % grid.nx()};
}

Vec2 unit_center(const UnitIndex2D& idx, const ImageGrid& grid) {
  flat_index(idx, grid);
  return {static_cast<double>(idx.i) - 0.5 * static_cast<double>(grid.nx() - 1),
          0.5 * static_cast<double>(grid.ny() - 1) - static_cast<double>(idx.j)};
}

Vec3 unit_center(const UnitIndex3D& idx, const ImageGrid& grid) {
  flat_index(idx, grid);
  return {static_cast<double>(idx.i) - 0.5 * static_cast<double>(grid.nx() - 1),
          0.5 * static_cast<double>(grid.ny() - 1) - static_cast<double>(idx.j),
          0.5 * static_cast<double>(grid.nz() - 1) - static_cast<double>(idx.k)};
}

CanonicalRay<ParallelRay2D> normalize_to_canonical(const ParallelRay2D& ray,
                                                   const ImageGrid& grid) {
  require_dim(grid, 2);
  const double h = grid.scale();
  const auto& c = grid.center();
  if (h == 1.0 && c[0] == 0.0 && c[1] == 0.0) return {ray, 1.0};
  const Vec2 n = ray.normal();
  return {{(ray.s - (c[0] * n[0] + c[1] * n[1])) / h, ray.phi}, h};
}

CanonicalRay<ParallelRay3D> normalize_to_canonical(const ParallelRay3D& ray,
                                                   const ImageGrid& grid) {
  require_dim(grid, 3);
  const double h = grid.scale();
  const auto& c = grid.center();
  if (h == 1.0 && c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0) return {ray, 1.0};
  const auto b = direction_basis_3d(ray.phi1, ray.phi2);
  const double c1 = c[0] * b.theta1[0] + c[1] * b.theta1[1] + c[2] * b.theta1[2];
  const double c2 = c[0] * b.theta2[0] + c[1] * b.theta2[1] + c[2] * b.theta2[2];
  return {{(ray.s1 - c1) / h, (ray.s2 - c2) / h, ray.phi1, ray.phi2}, h};
}

}  // namespace xrt
