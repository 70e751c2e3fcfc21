#include "xrt/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xrt/errors.hpp"

namespace xrt {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
}

void require_positive_distance(double D) {
  require_finite(D, "D");
  if (!(D > 0.0)) throw ValidationError("source distance D must be positive");
}

void require_open_half_pi(double v, const char* name) {
  require_finite(v, name);
  if (!(std::abs(v) < kHalfPi)) {
    throw ValidationError(std::string(name) + " must lie in (-pi/2, pi/2)");
  }
}

// [0, period), with values that round up to `period` folded back to 0.
double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

// Shared by the circular and helical equiangular transforms so that H = 0
// evaluates the identical expression.
RawParallel3D equiangular_to_parallel(double D, double phi1p, double alpha, double beta,
                                      double H) {
  return {D * std::sin(alpha), D * std::cos(alpha) * std::sin(beta) + H * std::cos(beta),
          phi1p + alpha, beta};
}

RawParallel3D equispaced_to_parallel(double D, double phi1p, double t, double h, double H) {
  const double alpha = std::atan(t / D);
  const double beta = std::atan(h / std::sqrt(D * D + t * t));
  const double c = std::cos(alpha);
  return {D * std::sin(alpha), h * c * c * std::cos(beta) + H * std::cos(beta),
          phi1p + alpha, beta};
}

}  // namespace

Vec2 ParallelRay2D::direction() const { return {std::cos(phi), std::sin(phi)}; }

Vec2 ParallelRay2D::normal() const { return {-std::sin(phi), std::cos(phi)}; }

Vec2 ParallelRay2D::offset_point() const {
  return {-s * std::sin(phi), s * std::cos(phi)};
}

Vec3 ParallelRay3D::direction() const { return direction_basis_3d(phi1, phi2).theta; }

Vec3 ParallelRay3D::offset_point() const {
  const auto b = direction_basis_3d(phi1, phi2);
  return {s1 * b.theta1[0] + s2 * b.theta2[0], s1 * b.theta1[1] + s2 * b.theta2[1],
          s1 * b.theta1[2] + s2 * b.theta2[2]};
}

int beam_dimension(const BeamSpec& spec) {
  return std::visit(
      [](const auto& b) -> int {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Parallel2D> || std::is_same_v<T, FanEquiangular> ||
                      std::is_same_v<T, FanEquispaced>) {
          return 2;
        } else {
          return 3;
        }
      },
      spec);
}

void validate(const BeamSpec& spec) {
  struct Visitor {
    void operator()(const Parallel2D& b) const {
      require_finite(b.s, "s");
      require_finite(b.phi, "phi");
    }
    void operator()(const FanEquiangular& b) const {
      require_positive_distance(b.D);
      require_finite(b.alpha, "alpha");
      require_finite(b.gamma, "gamma");
      if (b.gamma_max) {
        require_finite(*b.gamma_max, "gamma_max");
        if (!(*b.gamma_max > 0.0 && *b.gamma_max < kHalfPi)) {
          throw ValidationError("gamma_max must lie in (0, pi/2)");
        }
        if (std::abs(b.gamma) > *b.gamma_max) {
          throw ValidationError("gamma lies outside the field of view [-gamma_max, gamma_max]");
        }
      }
    }
    void operator()(const FanEquispaced& b) const {
      require_positive_distance(b.D);
      require_finite(b.alpha, "alpha");
      require_finite(b.t, "t");
      if (b.t_max) {
        require_finite(*b.t_max, "t_max");
        if (!(*b.t_max > 0.0)) throw ValidationError("t_max must be positive");
        if (std::abs(b.t) > *b.t_max) {
          throw ValidationError("t lies outside the field of view [-t_max, t_max]");
        }
      }
    }
    void operator()(const Parallel3D& b) const {
      require_finite(b.s1, "s1");
      require_finite(b.s2, "s2");
      require_finite(b.phi1, "phi1");
      require_finite(b.phi2, "phi2");
    }
    void operator()(const ConeEquiangular& b) const {
      require_positive_distance(b.D);
      require_finite(b.phi1p, "phi1p");
      require_open_half_pi(b.alpha, "alpha");
      require_open_half_pi(b.beta, "beta");
    }
    void operator()(const ConeEquispaced& b) const {
      require_positive_distance(b.D);
      require_finite(b.phi1p, "phi1p");
      require_finite(b.t, "t");
      require_finite(b.h, "h");
    }
    void operator()(const HelicalEquiangular& b) const {
      (*this)(ConeEquiangular{b.D, b.phi1p, b.alpha, b.beta});
      require_finite(b.H, "H");
    }
    void operator()(const HelicalEquispaced& b) const {
      (*this)(ConeEquispaced{b.D, b.phi1p, b.t, b.h});
      require_finite(b.H, "H");
    }
  };
  std::visit(Visitor{}, spec);
}

ParallelRay2D canonicalize_2d(double s, double phi) {
  require_finite(s, "s");
  require_finite(phi, "phi");
  if (phi >= 0.0 && phi < kPi) return {s, phi};

  double p = wrap(phi, kTwoPi);
  if (p >= kPi) {
    p -= kPi;
    s = -s;
  }
  return {s, p};
}

ParallelRay3D canonicalize_3d(double s1, double s2, double phi1, double phi2) {
  require_finite(s1, "s1");
  require_finite(s2, "s2");
  require_finite(phi1, "phi1");
  require_finite(phi2, "phi2");
  if (phi1 >= 0.0 && phi1 < kTwoPi && phi2 >= 0.0 && phi2 <= kHalfPi) {
    return {s1, s2, phi1, phi2};
  }

  // phi2 into (-pi, pi].
  double p2 = wrap(phi2, kTwoPi);
  if (p2 > kPi) p2 -= kTwoPi;
  // phi2 + pi flips theta and theta2.
  if (p2 > kHalfPi) {
    p2 -= kPi;
    s2 = -s2;
  } else if (p2 < -kHalfPi) {
    p2 += kPi;
    s2 = -s2;
  }
  // (-s1, s2, phi1 + pi, -phi2) is the same line.
  if (p2 < 0.0) {
    p2 = -p2;
    s1 = -s1;
    phi1 += kPi;
  }
  return {s1, s2, wrap(phi1, kTwoPi), p2 + 0.0};
}

DirectionBasis3D direction_basis_3d(double phi1, double phi2) {
  const double c1 = std::cos(phi1);
  const double sn1 = std::sin(phi1);
  const double c2 = std::cos(phi2);
  const double sn2 = std::sin(phi2);
  return {{c2 * c1, c2 * sn1, sn2}, {-sn1, c1, 0.0}, {-sn2 * c1, -sn2 * sn1, c2}};
}

RawParallel2D fan_equiangular_to_parallel(double D, double alpha, double gamma) {
  require_positive_distance(D);
  require_finite(alpha, "alpha");
  require_finite(gamma, "gamma");
  return {D * std::sin(gamma), gamma + alpha - kHalfPi};
}

RawParallel2D fan_equispaced_to_parallel(double D, double alpha, double t) {
  require_positive_distance(D);
  require_finite(alpha, "alpha");
  require_finite(t, "t");
  return {D * t / std::sqrt(D * D + t * t), std::atan(t / D) + alpha - kHalfPi};
}

RawParallel3D cone_equiangular_to_parallel(double D, double phi1p, double alpha,
                                           double beta) {
  validate(ConeEquiangular{D, phi1p, alpha, beta});
  return equiangular_to_parallel(D, phi1p, alpha, beta, 0.0);
}

RawParallel3D cone_equispaced_to_parallel(double D, double phi1p, double t, double h) {
  validate(ConeEquispaced{D, phi1p, t, h});
  return equispaced_to_parallel(D, phi1p, t, h, 0.0);
}

RawParallel3D helical_to_parallel(const HelicalEquiangular& spec) {
  validate(spec);
  return equiangular_to_parallel(spec.D, spec.phi1p, spec.alpha, spec.beta, spec.H);
}

RawParallel3D helical_to_parallel(const HelicalEquispaced& spec) {
  validate(spec);
  return equispaced_to_parallel(spec.D, spec.phi1p, spec.t, spec.h, spec.H);
}

}  // namespace xrt
