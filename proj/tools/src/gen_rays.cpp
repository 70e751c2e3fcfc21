#include "xrt_cli/gen_rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xrt/errors.hpp"

namespace xrt::cli {
namespace {

constexpr double kPi = std::numbers::pi;

double sample(double max, std::int64_t k, std::int64_t count) {
  if (count == 1) return 0.0;
  const double v = -max + 2.0 * max * static_cast<double>(k) / static_cast<double>(count - 1);
  return std::clamp(v, -max, max);
}

double positive(const std::optional<double>& given, double fallback, const char* name) {
  const double v = given.value_or(fallback);
  if (!std::isfinite(v) || v <= 0.0) {
    throw ValidationError(std::string("--") + name + " must be positive and finite");
  }
  return v;
}

}  // namespace

RaySet generate_rays(const GenRaysOptions& opt) {
  if (opt.views < 1 || opt.dets < 1 || opt.rows < 1) {
    throw ValidationError("--views, --dets and --rows must be >= 1");
  }
  const bool three_d = opt.geometry == "parallel3d" || opt.geometry.starts_with("cone_") ||
                       opt.geometry.starts_with("helical_");
  const ImageGrid grid =
      three_d ? ImageGrid::make_3d(opt.nx, opt.ny, opt.nz, opt.scale, {opt.cx, opt.cy, opt.cz})
              : ImageGrid::make_2d(opt.nx, opt.ny, opt.scale, {opt.cx, opt.cy});
  if (!three_d && opt.rows != 1) throw ValidationError("--rows applies to 3D geometries only");

  // Radius of a sphere about the origin that contains the whole grid.
  const double half_diag =
      0.5 * opt.scale *
      std::sqrt(static_cast<double>(grid.nx() * grid.nx() + grid.ny() * grid.ny() +
                                    (three_d ? grid.nz() * grid.nz() : 0)));
  const double radius =
      std::sqrt(opt.cx * opt.cx + opt.cy * opt.cy + (three_d ? opt.cz * opt.cz : 0.0)) +
      half_diag;

  const bool divergent = opt.geometry.starts_with("fan_") || opt.geometry.starts_with("cone_") ||
                         opt.geometry.starts_with("helical_");
  if (divergent && !(opt.D > 0.0)) throw ValidationError("--D must be positive");
  auto angle_fov = [&] {
    if (radius >= opt.D) {
      throw ValidationError("grid is not inside the source circle; pass the field of view");
    }
    return std::asin(radius / opt.D);
  };
  auto planar_fov = [&] { return opt.D * std::tan(angle_fov()); };
  auto derived = [&](const std::optional<double>& given, auto fn, const char* name) {
    return positive(given, given ? 0.0 : fn(), name);
  };

  RaySet rays(grid);
  const auto V = opt.views, K = opt.dets, R = opt.rows;
  const auto& g = opt.geometry;
  if (g == "parallel2d") {
    const double s_max = positive(opt.s_max, radius, "s-max");
    for (std::int64_t v = 0; v < V; ++v)
      for (std::int64_t k = 0; k < K; ++k)
        rays.add(Parallel2D{sample(s_max, k, K), kPi * v / V});
  } else if (g == "fan_equiangular") {
    const double gmax = derived(opt.gamma_max, angle_fov, "gamma-max");
    for (std::int64_t v = 0; v < V; ++v)
      for (std::int64_t k = 0; k < K; ++k)
        rays.add(FanEquiangular{opt.D, 2.0 * kPi * v / V, sample(gmax, k, K), gmax});
  } else if (g == "fan_equispaced") {
    const double tmax = derived(opt.t_max, planar_fov, "t-max");
    for (std::int64_t v = 0; v < V; ++v)
      for (std::int64_t k = 0; k < K; ++k)
        rays.add(FanEquispaced{opt.D, 2.0 * kPi * v / V, sample(tmax, k, K), tmax});
  } else if (g == "parallel3d") {
    const double s_max = positive(opt.s_max, radius, "s-max");
    for (std::int64_t v = 0; v < V; ++v)
      for (std::int64_t k = 0; k < K; ++k)
        for (std::int64_t r = 0; r < R; ++r)
          rays.add(Parallel3D{sample(s_max, k, K), sample(s_max, r, R), kPi * v / V, opt.phi2});
  } else if (g == "cone_equiangular" || g == "helical_equiangular") {
    const double amax = derived(opt.alpha_max, angle_fov, "alpha-max");
    const double bmax = derived(opt.beta_max, angle_fov, "beta-max");
    for (std::int64_t v = 0; v < V; ++v) {
      const double phi1p = 2.0 * kPi * v / V;
      const double H = opt.pitch * static_cast<double>(v) / static_cast<double>(V);
      for (std::int64_t k = 0; k < K; ++k)
        for (std::int64_t r = 0; r < R; ++r) {
          const double a = sample(amax, k, K), b = sample(bmax, r, R);
          if (g == "cone_equiangular") {
            rays.add(ConeEquiangular{opt.D, phi1p, a, b});
          } else {
            rays.add(HelicalEquiangular{opt.D, phi1p, a, b, H});
          }
        }
    }
  } else if (g == "cone_equispaced" || g == "helical_equispaced") {
    const double tmax = derived(opt.t_max, planar_fov, "t-max");
    const double hmax = derived(opt.h_max, planar_fov, "h-max");
    for (std::int64_t v = 0; v < V; ++v) {
      const double phi1p = 2.0 * kPi * v / V;
      const double H = opt.pitch * static_cast<double>(v) / static_cast<double>(V);
      for (std::int64_t k = 0; k < K; ++k)
        for (std::int64_t r = 0; r < R; ++r) {
          const double t = sample(tmax, k, K), h = sample(hmax, r, R);
          if (g == "cone_equispaced") {
            rays.add(ConeEquispaced{opt.D, phi1p, t, h});
          } else {
            rays.add(HelicalEquispaced{opt.D, phi1p, t, h, H});
          }
        }
    }
  } else {
    throw ValidationError("unknown geometry \"" + g + "\"");
  }
  return rays;
}

}  // namespace xrt::cli
