#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "xrt/projector.hpp"

namespace xrt::cli {

/// Standard acquisition sampling, view-major then detector-minor (then
/// detector row for cone geometries).
///
/// View angles are half-open: parallel views use phi = pi*v/V, source
/// trajectories use alpha (or phi1') = 2*pi*v/V. Detector parameters are
/// spaced uniformly over [-max, max] with both endpoints included; a single
/// detector sits at 0. Helical offsets follow H_v = pitch*v/V.
struct GenRaysOptions {
  std::string geometry;
  std::int64_t views = 1;
  std::int64_t dets = 1;
  std::int64_t rows = 1;

  std::int64_t nx = 0, ny = 0, nz = 0;
  double scale = 1.0;
  double cx = 0.0, cy = 0.0, cz = 0.0;

  double D = 0.0;
  double pitch = 0.0;
  double phi2 = 0.0;
  std::optional<double> s_max, gamma_max, t_max, alpha_max, beta_max, h_max;
};

/// Throws ValidationError on bad counts, missing source distance, or a
/// field of view that cannot be derived.
RaySet generate_rays(const GenRaysOptions& opt);

}  // namespace xrt::cli
