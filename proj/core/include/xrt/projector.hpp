#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "xrt/geometry.hpp"
#include "xrt/grid.hpp"
#include "xrt/sparse_row.hpp"

namespace xrt {

/// Gray values on a grid, in flat-index order.
class Image {
 public:
  /// Throws ValidationError unless values.size() == grid.unit_count() and all
  /// values are finite.
  Image(ImageGrid grid, std::vector<double> values);
  static Image zeros(const ImageGrid& grid);

  const ImageGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

 private:
  ImageGrid grid_;
  std::vector<double> values_;
};

/// Line-integral values, one per ray in ray-set order.
struct Sinogram {
  std::vector<double> values;

  std::size_t ray_count() const noexcept { return values.size(); }
};

/// Ordered beam specifications on one grid. The order is the row order of
/// every sinogram and matrix computed from the set.
class RaySet {
 public:
  explicit RaySet(ImageGrid grid);
  RaySet(ImageGrid grid, std::vector<BeamSpec> specs);

  /// Validates the spec and checks its dimension against the grid.
  void add(const BeamSpec& spec);

  const ImageGrid& grid() const noexcept { return grid_; }
  const std::vector<BeamSpec>& specs() const noexcept { return specs_; }
  std::size_t size() const noexcept { return specs_.size(); }
  bool empty() const noexcept { return specs_.empty(); }

 private:
  ImageGrid grid_;
  std::vector<BeamSpec> specs_;
};

struct ResolvedRay {
  std::variant<ParallelRay2D, ParallelRay3D> ray;  // canonical, grid units
  double length_scale;
};

/// Beam transform, angle canonicalization, then grid normalization.
ResolvedRay resolve_ray(const BeamSpec& spec, const ImageGrid& grid);

/// Row for one beam, lengths in physical units.
SparseRow compute_row(const BeamSpec& spec, const ImageGrid& grid);

struct ProjectionMatrix {
  std::vector<SparseRow> rows;
  std::size_t n_cols = 0;
  /// Physical multiplier already applied to every stored length.
  double scale_factor = 1.0;

  std::size_t n_rows() const noexcept { return rows.size(); }
  std::size_t nnz() const noexcept;

  std::vector<double> multiply(std::span<const double> x) const;
  /// Per-column sums run in row order regardless of `threads`.
  std::vector<double> multiply_transpose(std::span<const double> y,
                                         unsigned threads = 1) const;
};

struct ExecutionOptions {
  /// Worker cap; 0 selects the hardware concurrency.
  unsigned threads = 1;
};

Sinogram forward_project(const Image& image, const RaySet& rays, ExecutionOptions exec = {});

Image back_project(const Sinogram& sino, const RaySet& rays, const ImageGrid& grid,
                   ExecutionOptions exec = {});

ProjectionMatrix assemble_matrix(const RaySet& rays, const ImageGrid& grid,
                                 ExecutionOptions exec = {});

/// Sum of length * value over a row.
double row_dot(const SparseRow& row, std::span<const double> values);

}  // namespace xrt
