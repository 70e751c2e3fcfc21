#include "xrt/intersect3d.hpp"

#include <array>
#include <cmath>

#include "sweep.hpp"
#include "xrt/errors.hpp"

namespace xrt {
namespace {

template <bool Counting>
SparseRow compute(const ParallelRay3D& ray, const ImageGrid& grid, WorkCounter* counter) {
  if (grid.dim() != 3) throw ValidationError("intersect_row_3d needs a 3D grid");
  if (!std::isfinite(ray.s1) || !std::isfinite(ray.s2) || !std::isfinite(ray.phi1) ||
      !std::isfinite(ray.phi2)) {
    throw ValidationError("ray parameters must be finite");
  }

  const double c1 = std::cos(ray.phi1);
  const double sn1 = std::sin(ray.phi1);
  const double c2 = std::cos(ray.phi2);
  const double sn2 = std::sin(ray.phi2);

  const Vec3 theta{c2 * c1, c2 * sn1, sn2};
  const Vec3 p0{-ray.s1 * sn1 - ray.s2 * sn2 * c1, ray.s1 * c1 - ray.s2 * sn2 * sn1,
                ray.s2 * c2};

  const auto nx = static_cast<std::size_t>(grid.nx());
  const auto ny = static_cast<std::size_t>(grid.ny());
  const std::array<detail::Axis, 3> axes{
      detail::Axis{grid.nx(), 1, true, p0[0], theta[0]},
      detail::Axis{grid.ny(), nx, false, p0[1], theta[1]},
      detail::Axis{grid.nz(), nx * ny, false, p0[2], theta[2]},
  };

  const bool vertical = std::abs(c2) < tolerance::axis;
  const std::array<bool, 3> fixed{
      vertical || std::abs(c1) < tolerance::axis,
      vertical || std::abs(sn1) < tolerance::axis,
      std::abs(sn2) < tolerance::axis,
  };

  detail::RowBuilder<Counting> out(counter);

  std::size_t base = 0;
  std::array<const detail::Axis*, 3> moving{};
  std::size_t n_moving = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    if (fixed[a]) {
      const auto u = detail::fixed_unit(axes[a]);
      if (!u) return out.finish();
      base += static_cast<std::size_t>(*u) * axes[a].stride;
    } else {
      moving[n_moving++] = &axes[a];
    }
  }

  switch (n_moving) {
    case 3:
      detail::sweep_volume(out, axes[0], axes[1], axes[2]);
      break;
    case 2:
      detail::sweep_plane(out, *moving[0], *moving[1], base);
      break;
    case 1:
      detail::sweep_line(out, *moving[0], base);
      break;
    default:
      break;
  }
  return out.finish();
}

}  // namespace

SparseRow intersect_row_3d(const ParallelRay3D& ray, const ImageGrid& grid) {
  return compute<false>(ray, grid, nullptr);
}

SparseRow intersect_row_3d(const ParallelRay3D& ray, const ImageGrid& grid,
                           WorkCounter& counter) {
  return compute<true>(ray, grid, &counter);
}

}  // namespace xrt
