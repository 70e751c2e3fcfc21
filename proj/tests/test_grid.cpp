#include <gtest/gtest.h>

#include <limits>

#include "test_support.hpp"
#include "xrt/errors.hpp"
#include "xrt/grid.hpp"
#include "xrt/intersect2d.hpp"
#include "xrt/intersect3d.hpp"
#include "xrt/projector.hpp"

namespace xrt {
namespace {

using test::kPi;

TEST(Grid, FlatIndexExamples) {
  const auto g7 = ImageGrid::make_2d(7, 7);
  EXPECT_EQ(flat_index(UnitIndex2D{0, 0}, g7), 0u);
  EXPECT_EQ(flat_index(UnitIndex2D{3, 2}, g7), 23u);
  EXPECT_EQ(flat_index(UnitIndex3D{2, 2, 2}, ImageGrid::make_3d(3, 3, 3)), 26u);
}

TEST(Grid, FlatIndexIsRowMajorOnRectangularGrids) {
  const auto g = ImageGrid::make_2d(5, 2);
  EXPECT_EQ(flat_index(UnitIndex2D{1, 4}, g), 9u);
  const auto g3 = ImageGrid::make_3d(4, 3, 2);
  EXPECT_EQ(flat_index(UnitIndex3D{1, 2, 3}, g3), 1u * 12 + 2 * 4 + 3);
}

TEST(Grid, IndexRoundTrip) {
  for (auto [nx, ny] : {std::pair{1, 1}, {3, 3}, {5, 2}, {2, 7}}) {
    const auto g = ImageGrid::make_2d(nx, ny);
    std::size_t expected = 0;
    for (std::int64_t j = 0; j < ny; ++j) {
      for (std::int64_t i = 0; i < nx; ++i) {
        const UnitIndex2D idx{j, i};
        const auto flat = flat_index(idx, g);
        EXPECT_EQ(flat, expected++);
        EXPECT_EQ(unflat_index_2d(flat, g), idx);
      }
    }
  }
  const auto g3 = ImageGrid::make_3d(3, 4, 2);
  for (std::size_t flat = 0; flat < g3.unit_count(); ++flat) {
    EXPECT_EQ(flat_index(unflat_index_3d(flat, g3), g3), flat);
  }
}

TEST(Grid, OutOfBoundsThrows) {
  const auto g = ImageGrid::make_2d(3, 3);
  EXPECT_THROW(flat_index(UnitIndex2D{3, 0}, g), BoundsError);
  EXPECT_THROW(flat_index(UnitIndex2D{0, -1}, g), BoundsError);
  EXPECT_THROW(unflat_index_2d(9, g), BoundsError);
  EXPECT_THROW(flat_index(UnitIndex3D{0, 0, 0}, g), ValidationError);
  EXPECT_THROW(unit_center(UnitIndex2D{0, 5}, g), BoundsError);
}

TEST(Grid, InvalidConstruction) {
  EXPECT_THROW(ImageGrid::make_2d(0, 3), ValidationError);
  EXPECT_THROW(ImageGrid::make_2d(3, 3, 0.0), ValidationError);
  EXPECT_THROW(ImageGrid::make_2d(3, 3, -1.0), ValidationError);
  EXPECT_THROW(ImageGrid::make_2d(3, 3, 1.0, {std::numeric_limits<double>::quiet_NaN(), 0.0}),
               ValidationError);
  EXPECT_THROW(ImageGrid::make_3d(3, 3, 0), ValidationError);
}

TEST(Grid, UnitCenters) {
  auto c = unit_center(UnitIndex2D{3, 3}, ImageGrid::make_2d(7, 7));
  EXPECT_DOUBLE_EQ(c[0], 0.0);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
  c = unit_center(UnitIndex2D{0, 0}, ImageGrid::make_2d(3, 3));
  EXPECT_DOUBLE_EQ(c[0], -1.0);
  EXPECT_DOUBLE_EQ(c[1], 1.0);
  const auto c3 = unit_center(UnitIndex3D{0, 0, 0}, ImageGrid::make_3d(4, 4, 4));
  EXPECT_DOUBLE_EQ(c3[0], -1.5);
  EXPECT_DOUBLE_EQ(c3[1], 1.5);
  EXPECT_DOUBLE_EQ(c3[2], 1.5);
}

TEST(Grid, NormalizeIdentity) {
  const ParallelRay2D ray{0.37, 1.1};
  const auto n = normalize_to_canonical(ray, ImageGrid::make_2d(4, 4));
  EXPECT_EQ(n.ray, ray);
  EXPECT_EQ(n.length_scale, 1.0);
}

TEST(Grid, NormalizeScale) {
  const auto n = normalize_to_canonical(ParallelRay2D{1.0, 0.0}, ImageGrid::make_2d(3, 3, 2.0));
  EXPECT_DOUBLE_EQ(n.ray.s, 0.5);
  EXPECT_EQ(n.length_scale, 2.0);
}

TEST(Grid, NormalizeCenter) {
  const auto g = ImageGrid::make_2d(3, 3, 1.0, {0.0, 1.0});
  const auto n = normalize_to_canonical(ParallelRay2D{1.0, 0.0}, g);
  EXPECT_DOUBLE_EQ(n.ray.s, 0.0);
  EXPECT_EQ(compute_row(Parallel2D{1.0, 0.0}, g),
            compute_row(Parallel2D{0.0, 0.0}, ImageGrid::make_2d(3, 3)));
}

// Clips a physical ray against physical unit boxes one by one.
SparseRow physical_clip_2d(const ParallelRay2D& ray, const ImageGrid& g) {
  SparseRow row;
  const auto p = ray.offset_point();
  const auto d = ray.direction();
  const double h = g.scale();
  for (std::int64_t j = 0; j < g.ny(); ++j) {
    for (std::int64_t i = 0; i < g.nx(); ++i) {
      const double lo[2] = {g.center()[0] + h * (i - g.nx() / 2.0),
                            g.center()[1] + h * (g.ny() / 2.0 - j - 1)};
      double t0 = -1e300, t1 = 1e300;
      for (int a = 0; a < 2; ++a) {
        double u = (lo[a] - p[a]) / d[a], v = (lo[a] + h - p[a]) / d[a];
        if (u > v) std::swap(u, v);
        t0 = std::max(t0, u);
        t1 = std::min(t1, v);
      }
      if (t1 - t0 > 1e-12 * h) {
        row.records.push_back({static_cast<std::size_t>(j * g.nx() + i), t1 - t0});
      }
    }
  }
  return row;
}

SparseRow physical_clip_3d(const ParallelRay3D& ray, const ImageGrid& g) {
  SparseRow row;
  const auto p = ray.offset_point();
  const auto d = ray.direction();
  const double h = g.scale();
  for (std::int64_t k = 0; k < g.nz(); ++k) {
    for (std::int64_t j = 0; j < g.ny(); ++j) {
      for (std::int64_t i = 0; i < g.nx(); ++i) {
        const double lo[3] = {g.center()[0] + h * (i - g.nx() / 2.0),
                              g.center()[1] + h * (g.ny() / 2.0 - j - 1),
                              g.center()[2] + h * (g.nz() / 2.0 - k - 1)};
        double t0 = -1e300, t1 = 1e300;
        for (int a = 0; a < 3; ++a) {
          double u = (lo[a] - p[a]) / d[a], v = (lo[a] + h - p[a]) / d[a];
          if (u > v) std::swap(u, v);
          t0 = std::max(t0, u);
          t1 = std::min(t1, v);
        }
        if (t1 - t0 > 1e-12 * h) {
          row.records.push_back(
              {static_cast<std::size_t>((k * g.ny() + j) * g.nx() + i), t1 - t0});
        }
      }
    }
  }
  return row;
}

void expect_rows_near(const SparseRow& a, const SparseRow& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a.records[r].flat_index, b.records[r].flat_index);
    EXPECT_NEAR(a.records[r].length, b.records[r].length, tol);
  }
}

TEST(Grid, CenterScaleCovariance2D) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 300; ++n) {
    const double h = test::uniform(rng, 0.3, 3.0);
    const Vec2 c{test::uniform(rng, -5, 5), test::uniform(rng, -5, 5)};
    const auto g = ImageGrid::make_2d(4, 5, h, c);
    // Oblique rays through the grid's neighborhood.
    const double phi = test::uniform(rng, 0.01, kPi - 0.01);
    const ParallelRay2D probe{0.0, phi};
    const double base = c[0] * probe.normal()[0] + c[1] * probe.normal()[1];
    const ParallelRay2D ray{base + test::uniform(rng, -3.5, 3.5) * h, phi};
    const auto row = compute_row(Parallel2D{ray.s, ray.phi}, g);
    expect_rows_near(row, physical_clip_2d(ray, g), 1e-9 * h);
    // Same as the canonical row scaled by h.
    const auto canon = normalize_to_canonical(ray, g);
    const auto unit = intersect_row_2d(canon.ray, ImageGrid::make_2d(4, 5));
    ASSERT_EQ(unit.size(), row.size());
    for (std::size_t r = 0; r < row.size(); ++r) {
      EXPECT_EQ(unit.records[r].flat_index, row.records[r].flat_index);
      EXPECT_DOUBLE_EQ(unit.records[r].length * h, row.records[r].length);
    }
  }
}

TEST(Grid, CenterScaleCovariance3D) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 200; ++n) {
    const double h = test::uniform(rng, 0.3, 3.0);
    const Vec3 c{test::uniform(rng, -5, 5), test::uniform(rng, -5, 5),
                 test::uniform(rng, -5, 5)};
    const auto g = ImageGrid::make_3d(3, 4, 2, h, c);
    const double p1 = test::uniform(rng, 0.01, 2 * kPi - 0.01);
    const double p2 = test::uniform(rng, 0.01, kPi / 2 - 0.01);
    const auto b = direction_basis_3d(p1, p2);
    const double c1 = c[0] * b.theta1[0] + c[1] * b.theta1[1] + c[2] * b.theta1[2];
    const double c2 = c[0] * b.theta2[0] + c[1] * b.theta2[1] + c[2] * b.theta2[2];
    const ParallelRay3D ray{c1 + test::uniform(rng, -2.5, 2.5) * h,
                            c2 + test::uniform(rng, -2.5, 2.5) * h, p1, p2};
    const auto row = compute_row(Parallel3D{ray.s1, ray.s2, ray.phi1, ray.phi2}, g);
    expect_rows_near(row, physical_clip_3d(ray, g), 1e-9 * h);
  }
}

}  // namespace
}  // namespace xrt
