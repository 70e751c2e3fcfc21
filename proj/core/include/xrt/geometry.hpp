#pragma once

#include <array>
#include <optional>
#include <variant>

namespace xrt {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// 2D parallel-beam ray: the line {t*theta + s*theta_perp}, with
/// theta = (cos phi, sin phi) and theta_perp = (-sin phi, cos phi).
/// Canonical form has phi in [0, pi).
struct ParallelRay2D {
  double s = 0.0;
  double phi = 0.0;

  Vec2 direction() const;
  Vec2 normal() const;
  /// Foot point s*theta_perp.
  Vec2 offset_point() const;

  friend bool operator==(const ParallelRay2D&, const ParallelRay2D&) = default;
};

/// 3D parallel-beam ray: the line {t*theta + s1*theta1 + s2*theta2} with the
/// Euler-angle basis of `direction_basis_3d`. Canonical form has
/// phi1 in [0, 2pi) and phi2 in [0, pi/2].
struct ParallelRay3D {
  double s1 = 0.0;
  double s2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  Vec3 direction() const;
  /// Foot point s1*theta1 + s2*theta2.
  Vec3 offset_point() const;

  friend bool operator==(const ParallelRay3D&, const ParallelRay3D&) = default;
};

struct DirectionBasis3D {
  Vec3 theta;
  Vec3 theta1;
  Vec3 theta2;
};

/// Raw (non-canonical) parameter pair produced by the fan transforms.
struct RawParallel2D {
  double s;
  double phi;
};

struct RawParallel3D {
  double s1;
  double s2;
  double phi1;
  double phi2;
};

// Beam specifications. Distances are physical; angles are radians.

struct Parallel2D {
  double s;
  double phi;
};

struct FanEquiangular {
  double D;
  double alpha;
  double gamma;
  std::optional<double> gamma_max;
};

struct FanEquispaced {
  double D;
  double alpha;
  double t;
  std::optional<double> t_max;
};

struct Parallel3D {
  double s1;
  double s2;
  double phi1;
  double phi2;
};

struct ConeEquiangular {
  double D;
  double phi1p;
  double alpha;
  double beta;
};

struct ConeEquispaced {
  double D;
  double phi1p;
  double t;
  double h;
};

struct HelicalEquiangular {
  double D;
  double phi1p;
  double alpha;
  double beta;
  double H;
};

struct HelicalEquispaced {
  double D;
  double phi1p;
  double t;
  double h;
  double H;
};

using BeamSpec = std::variant<Parallel2D, FanEquiangular, FanEquispaced, Parallel3D,
                              ConeEquiangular, ConeEquispaced, HelicalEquiangular,
                              HelicalEquispaced>;

/// 2 for the planar geometries, 3 otherwise.
int beam_dimension(const BeamSpec& spec);

/// Throws ValidationError if the spec violates its parameter domain
/// (non-finite values, D <= 0, field-of-view limits, cone angles outside
/// (-pi/2, pi/2)).
void validate(const BeamSpec& spec);

/// Reduces phi into [0, pi) using (s, phi + 2n*pi) == (s, phi) and
/// (s, phi + pi) == (-s, phi). Already-canonical input is returned unchanged.
ParallelRay2D canonicalize_2d(double s, double phi);

/// Reduces (phi1, phi2) into [0, 2pi) x [0, pi/2] using
/// (s1, s2, phi1, phi2 + pi) == (s1, -s2, phi1, phi2) and
/// (-s1, s2, phi1 + pi, -phi2) == (s1, s2, phi1, phi2).
ParallelRay3D canonicalize_3d(double s1, double s2, double phi1, double phi2);

DirectionBasis3D direction_basis_3d(double phi1, double phi2);

RawParallel2D fan_equiangular_to_parallel(double D, double alpha, double gamma);
RawParallel2D fan_equispaced_to_parallel(double D, double alpha, double t);
RawParallel3D cone_equiangular_to_parallel(double D, double phi1p, double alpha, double beta);
RawParallel3D cone_equispaced_to_parallel(double D, double phi1p, double t, double h);
RawParallel3D helical_to_parallel(const HelicalEquiangular& spec);
RawParallel3D helical_to_parallel(const HelicalEquispaced& spec);

}  // namespace xrt
