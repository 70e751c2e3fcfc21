#pragma once

#include <cstddef>
#include <cstdint>

#include "xrt/geometry.hpp"

namespace xrt {

struct UnitIndex2D {
  std::int64_t j = 0;  // row, counted downward from the top (+y) edge
  std::int64_t i = 0;  // column, counted from the left (-x) edge

  friend bool operator==(const UnitIndex2D&, const UnitIndex2D&) = default;
};

struct UnitIndex3D {
  std::int64_t k = 0;  // slice, counted downward from the top (+z) face
  std::int64_t j = 0;
  std::int64_t i = 0;

  friend bool operator==(const UnitIndex3D&, const UnitIndex3D&) = default;
};

/// Uniform pixel/voxel grid. Canonical coordinates put the grid center at the
/// origin with unit-sized cells; physical = canonical * scale + center.
///
/// Unit (j, i) covers [i - nx/2, i - nx/2 + 1] x [ny/2 - j - 1, ny/2 - j] in
/// canonical coordinates (and [nz/2 - k - 1, nz/2 - k] along z in 3D).
class ImageGrid {
 public:
  static ImageGrid make_2d(std::int64_t nx, std::int64_t ny, double scale = 1.0,
                           Vec2 center = {0.0, 0.0});
  static ImageGrid make_3d(std::int64_t nx, std::int64_t ny, std::int64_t nz,
                           double scale = 1.0, Vec3 center = {0.0, 0.0, 0.0});

  int dim() const noexcept { return dim_; }
  std::int64_t nx() const noexcept { return nx_; }
  std::int64_t ny() const noexcept { return ny_; }
  /// 1 for 2D grids.
  std::int64_t nz() const noexcept { return nz_; }
  double scale() const noexcept { return scale_; }
  /// Physical center; the z component is 0 for 2D grids.
  const Vec3& center() const noexcept { return center_; }

  std::size_t unit_count() const noexcept {
    return static_cast<std::size_t>(nx_ * ny_ * nz_);
  }

  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

 private:
  ImageGrid() = default;

  int dim_ = 2;
  std::int64_t nx_ = 1;
  std::int64_t ny_ = 1;
  std::int64_t nz_ = 1;
  double scale_ = 1.0;
  Vec3 center_{0.0, 0.0, 0.0};
};

/// Row-major: I = j*nx + i.
std::size_t flat_index(const UnitIndex2D& idx, const ImageGrid& grid);
/// I = k*nx*ny + j*nx + i.
std::size_t flat_index(const UnitIndex3D& idx, const ImageGrid& grid);

UnitIndex2D unflat_index_2d(std::size_t flat, const ImageGrid& grid);
UnitIndex3D unflat_index_3d(std::size_t flat, const ImageGrid& grid);

/// Canonical-coordinate center of a unit.
Vec2 unit_center(const UnitIndex2D& idx, const ImageGrid& grid);
Vec3 unit_center(const UnitIndex3D& idx, const ImageGrid& grid);

template <class Ray>
struct CanonicalRay {
  Ray ray;
  /// Multiplies canonical intersection lengths into physical lengths.
  double length_scale;
};

/// Maps a physical-space ray onto the grid's canonical frame. Angles are
/// unchanged; offsets are shifted by the center's projection on the normal
/// basis and divided by the scale.
CanonicalRay<ParallelRay2D> normalize_to_canonical(const ParallelRay2D& ray,
                                                   const ImageGrid& grid);
CanonicalRay<ParallelRay3D> normalize_to_canonical(const ParallelRay3D& ray,
                                                   const ImageGrid& grid);

}  // namespace xrt
