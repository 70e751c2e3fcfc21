#include "xrt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "xrt/errors.hpp"

namespace xrt::oracle {
namespace {

constexpr double kZeroDirection = 1e-12;
constexpr double kContainment = 1e-12;
constexpr double kDrop = 1e-12;

template <std::size_t D>
struct Line {
  std::array<double, D> point;
  std::array<double, D> dir;
};

// Length of the line inside the axis-aligned box [lo, hi].
template <std::size_t D>
double clip(const Line<D>& line, const std::array<double, D>& lo,
            const std::array<double, D>& hi) {
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < D; ++a) {
    const double p = line.point[a];
    const double d = line.dir[a];
    if (std::abs(d) < kZeroDirection) {
      if (p < lo[a] - kContainment || p > hi[a] + kContainment) return 0.0;
      continue;
    }
    double t0 = (lo[a] - p) / d;
    double t1 = (hi[a] - p) / d;
    if (t0 > t1) std::swap(t0, t1);
    t_min = std::max(t_min, t0);
    t_max = std::min(t_max, t1);
  }
  if (!std::isfinite(t_min) || !std::isfinite(t_max)) {
    // Every component was zero; impossible for a unit direction.
    return 0.0;
  }
  return std::max(0.0, t_max - t_min);
}

Line<2> line_of(const ParallelRay2D& ray) {
  const Vec2 p = ray.offset_point();
  const Vec2 d = ray.direction();
  return {{p[0], p[1]}, {d[0], d[1]}};
}

Line<3> line_of(const ParallelRay3D& ray) {
  const Vec3 p = ray.offset_point();
  const Vec3 d = ray.direction();
  return {{p[0], p[1], p[2]}, {d[0], d[1], d[2]}};
}

void require_dim(const ImageGrid& grid, int dim) {
  if (grid.dim() != dim) throw ValidationError("oracle: grid dimension mismatch");
}

// Groups records by their unit coordinates with the non-moving axes erased
// and keeps the largest flat index of each group.
template <std::size_t D>
SparseRow collapse(const SparseRow& row, const std::array<bool, D>& fixed,
                   const std::array<std::int64_t, D>& counts) {
  std::map<std::array<std::int64_t, D>, IntersectionRecord> best;
  for (const auto& r : row.records) {
    std::array<std::int64_t, D> key{};
    auto rest = static_cast<std::int64_t>(r.flat_index);
    for (std::size_t a = 0; a < D; ++a) {
      key[a] = fixed[a] ? -1 : rest % counts[a];
      rest /= counts[a];
    }
    auto [it, inserted] = best.try_emplace(key, r);
    if (!inserted && r.flat_index > it->second.flat_index) it->second = r;
  }
  SparseRow out;
  for (const auto& [key, rec] : best) out.records.push_back(rec);
  std::sort(out.records.begin(), out.records.end(),
            [](const auto& a, const auto& b) { return a.flat_index < b.flat_index; });
  return out;
}

}  // namespace

SparseRow oracle_row(const ParallelRay2D& ray, const ImageGrid& grid) {
  require_dim(grid, 2);
  const Line<2> line = line_of(ray);
  const double hx = 0.5 * static_cast<double>(grid.nx());
  const double hy = 0.5 * static_cast<double>(grid.ny());
  SparseRow row;
  for (std::int64_t j = 0; j < grid.ny(); ++j) {
    for (std::int64_t i = 0; i < grid.nx(); ++i) {
      const double x0 = static_cast<double>(i) - hx;
      const double y1 = hy - static_cast<double>(j);
      const double len = clip<2>(line, {x0, y1 - 1.0}, {x0 + 1.0, y1});
      if (len > kDrop) {
        row.records.push_back({static_cast<std::size_t>(j * grid.nx() + i), len});
      }
    }
  }
  return row;
}

SparseRow oracle_row(const ParallelRay3D& ray, const ImageGrid& grid) {
  require_dim(grid, 3);
  const Line<3> line = line_of(ray);
  const double hx = 0.5 * static_cast<double>(grid.nx());
  const double hy = 0.5 * static_cast<double>(grid.ny());
  const double hz = 0.5 * static_cast<double>(grid.nz());
  SparseRow row;
  for (std::int64_t k = 0; k < grid.nz(); ++k) {
    for (std::int64_t j = 0; j < grid.ny(); ++j) {
      for (std::int64_t i = 0; i < grid.nx(); ++i) {
        const double x0 = static_cast<double>(i) - hx;
        const double y1 = hy - static_cast<double>(j);
        const double z1 = hz - static_cast<double>(k);
        const double len =
            clip<3>(line, {x0, y1 - 1.0, z1 - 1.0}, {x0 + 1.0, y1, z1});
        if (len > kDrop) {
          row.records.push_back(
              {static_cast<std::size_t>((k * grid.ny() + j) * grid.nx() + i), len});
        }
      }
    }
  }
  return row;
}

double domain_chord_length(const ParallelRay2D& ray, const ImageGrid& grid) {
  require_dim(grid, 2);
  const double hx = 0.5 * static_cast<double>(grid.nx());
  const double hy = 0.5 * static_cast<double>(grid.ny());
  return clip<2>(line_of(ray), {-hx, -hy}, {hx, hy});
}

double domain_chord_length(const ParallelRay3D& ray, const ImageGrid& grid) {
  require_dim(grid, 3);
  const double hx = 0.5 * static_cast<double>(grid.nx());
  const double hy = 0.5 * static_cast<double>(grid.ny());
  const double hz = 0.5 * static_cast<double>(grid.nz());
  return clip<3>(line_of(ray), {-hx, -hy, -hz}, {hx, hy, hz});
}

SparseRow apply_tie_break(const SparseRow& row, const ParallelRay2D& ray,
                          const ImageGrid& grid) {
  require_dim(grid, 2);
  const Vec2 d = ray.direction();
  return collapse<2>(row, {std::abs(d[0]) < kZeroDirection, std::abs(d[1]) < kZeroDirection},
                     {grid.nx(), grid.ny()});
}

SparseRow apply_tie_break(const SparseRow& row, const ParallelRay3D& ray,
                          const ImageGrid& grid) {
  require_dim(grid, 3);
  const Vec3 d = ray.direction();
  return collapse<3>(row,
                     {std::abs(d[0]) < kZeroDirection, std::abs(d[1]) < kZeroDirection,
                      std::abs(d[2]) < kZeroDirection},
                     {grid.nx(), grid.ny(), grid.nz()});
}

std::optional<std::string> compare_rows(const SparseRow& actual, const SparseRow& expected,
                                        double length_tol) {
  std::ostringstream msg;
  msg.precision(17);
  const std::size_t n = std::min(actual.size(), expected.size());
  for (std::size_t r = 0; r < n; ++r) {
    const auto& a = actual.records[r];
    const auto& e = expected.records[r];
    if (a.flat_index != e.flat_index) {
      msg << "record " << r << ": index " << a.flat_index << " vs expected " << e.flat_index;
      return msg.str();
    }
    if (!(std::abs(a.length - e.length) < length_tol)) {
      msg << "index " << a.flat_index << ": length " << a.length << " vs expected "
          << e.length;
      return msg.str();
    }
  }
  if (actual.size() != expected.size()) {
    msg << "row sizes differ: " << actual.size() << " vs expected " << expected.size();
    return msg.str();
  }
  return std::nullopt;
}

}  // namespace xrt::oracle
