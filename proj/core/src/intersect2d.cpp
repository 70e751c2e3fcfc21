#include "xrt/intersect2d.hpp"

#include <cmath>

#include "sweep.hpp"
#include "xrt/errors.hpp"

namespace xrt {
namespace {

template <bool Counting>
SparseRow compute(const ParallelRay2D& ray, const ImageGrid& grid, WorkCounter* counter) {
  if (grid.dim() != 2) throw ValidationError("intersect_row_2d needs a 2D grid");
  if (!std::isfinite(ray.s) || !std::isfinite(ray.phi)) {
    throw ValidationError("ray parameters must be finite");
  }

  const double c = std::cos(ray.phi);
  const double sn = std::sin(ray.phi);
  const detail::Axis x{grid.nx(), 1, true, -ray.s * sn, c};
  const detail::Axis y{grid.ny(), static_cast<std::size_t>(grid.nx()), false, ray.s * c, sn};

  detail::RowBuilder<Counting> out(counter);
  if (std::abs(sn) < tolerance::axis) {
    if (auto j = detail::fixed_unit(y)) {
      detail::sweep_line(out, x, static_cast<std::size_t>(*j) * y.stride);
    }
  } else if (std::abs(c) < tolerance::axis) {
    if (auto i = detail::fixed_unit(x)) {
      detail::sweep_line(out, y, static_cast<std::size_t>(*i));
    }
  } else {
    detail::sweep_plane(out, x, y, 0);
  }
  return out.finish();
}

}  // namespace

SparseRow intersect_row_2d(const ParallelRay2D& ray, const ImageGrid& grid) {
  return compute<false>(ray, grid, nullptr);
}

SparseRow intersect_row_2d(const ParallelRay2D& ray, const ImageGrid& grid,
                           WorkCounter& counter) {
  return compute<true>(ray, grid, &counter);
}

}  // namespace xrt
