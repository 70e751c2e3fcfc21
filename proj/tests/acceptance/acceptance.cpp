// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "xrt/grid.hpp"
#include "xrt/intersect2d.hpp"
#include "xrt/intersect3d.hpp"
#include "xrt/io.hpp"
#include "xrt/oracle.hpp"
#include "xrt/perfbench.hpp"
#include "xrt/projector.hpp"

namespace {

using namespace xrt;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;
constexpr double kTableTol = 5e-6;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Golden {
  std::size_t index;
  double tabulated;
  double closed_form;
};

Outcome check_golden(const SparseRow& row, const std::vector<Golden>& want, double exact_tol) {
  std::ostringstream o;
  o.precision(3);
  if (row.size() != want.size()) {
    o << "expected " << want.size() << " records, got " << row.size();
    return {false, o.str()};
  }
  double worst_table = 0.0, worst_exact = 0.0;
  for (std::size_t r = 0; r < want.size(); ++r) {
    if (row.records[r].flat_index != want[r].index) {
      o << "record " << r << " index " << row.records[r].flat_index << " != " << want[r].index;
      return {false, o.str()};
    }
    worst_table = std::max(worst_table, std::abs(row.records[r].length - want[r].tabulated));
    worst_exact = std::max(worst_exact, std::abs(row.records[r].length - want[r].closed_form));
  }
  o << std::scientific << "max |len - table| = " << worst_table << " (tol " << kTableTol
    << "), max |len - closed form| = " << worst_exact << " (tol " << exact_tol << ")";
  return {worst_table <= kTableTol && worst_exact <= exact_tol, o.str()};
}

double median_row_microseconds(const BeamSpec& spec, const ImageGrid& grid) {
  std::vector<double> t;
  for (int k = 0; k < 1001; ++k) {
    const auto a = Clock::now();
    const auto row = compute_row(spec, grid);
    const auto b = Clock::now();
    if (row.empty()) return 1e9;
    t.push_back(std::chrono::duration<double, std::micro>(b - a).count());
  }
  std::nth_element(t.begin(), t.begin() + t.size() / 2, t.end());
  return t[t.size() / 2];
}

Outcome with_runtime(Outcome o, const BeamSpec& spec, const ImageGrid& grid) {
  const double us = median_row_microseconds(spec, grid);
  std::ostringstream d;
  d << o.detail << ", median row time " << us << " us (limit 100 us)";
  return {o.pass && us < 100.0, d.str()};
}

const double r2 = std::numbers::sqrt2;
const double r3 = std::numbers::sqrt3;

Outcome criterion_table1() {
  const auto g = ImageGrid::make_2d(3, 3);
  const BeamSpec spec = Parallel2D{1.0, kPi / 4};
  return with_runtime(check_golden(compute_row(spec, g),
                                   {{0, 0.585787, 2 - r2},
                                    {1, 0.828427, 2 * r2 - 2},
                                    {3, 0.828427, 2 * r2 - 2}},
                                   1e-12),
                      spec, g);
}

Outcome criterion_table2() {
  const auto g = ImageGrid::make_2d(4, 4);
  const BeamSpec spec = FanEquiangular{4.0, kPi / 2, -kPi / 6, std::nullopt};
  return with_runtime(
      check_golden(compute_row(spec, g), {{12, 1.1547, 2 * r3 / 3}, {13, 0.535899, 4 - 2 * r3}},
                   1e-12),
      spec, g);
}

Outcome criterion_table3() {
  const auto g = ImageGrid::make_3d(3, 3, 3);
  const BeamSpec spec = Parallel3D{0.0, 0.0, kPi / 4, kPi / 4};
  return with_runtime(check_golden(compute_row(spec, g),
                                   {{2, 1.12132, 1.5 * r2 - 1},
                                    {4, 0.292893, 1 - r2 / 2},
                                    {13, 1.41421, r2},
                                    {22, 0.292893, 1 - r2 / 2},
                                    {24, 1.12132, 1.5 * r2 - 1}},
                                   1e-12),
                      spec, g);
}

Outcome criterion_tables45() {
  const auto g = ImageGrid::make_3d(4, 4, 4);
  const double t = std::tan(kPi / 12), c = std::cos(kPi / 12), s = std::sin(kPi / 12);
  const double s5 = std::sin(5 * kPi / 12), s3 = std::sin(kPi / 3);
  const double w = (4 - r2) * t * s5 / s3;
  const double face = 2 * r3 / (3 * c);
  const double top = 2 * (1 - w) / c;
  const double cut = (0.5 - (4 * r2 - 4) * t) / s;

  const auto cone = check_golden(
      compute_row(ConeEquiangular{4.0, kPi / 4, kPi / 12, kPi / 12}, g),
      {{1, 1.19543, face},
       {5, 0.712929, (((4 - r2) * (r2 - 2 * t * s5 / s3) + 4 * r3 / 3) * t - 1) / s},
       {20, 0.404656, 2 * (w - r3 / 3) / c},
       {21, 0.0778492, (1 - (4 * r2 - 2) * t) / s},
       {24, 1.19543, face},
       {28, 0.470462, top}},
      1e-10);
  // Flat 12 is unit (0,3,0) and flat 28 is unit (1,3,0); the short chord
  // `cut` lies in the upper slice.
  const auto helical = check_golden(
      compute_row(HelicalEquiangular{4.0, kPi / 4, kPi / 12, kPi / 12, 0.5}, g),
      {{1, 1.19543, face},
       {4, 0.404656, 2 * (w - r3 / 3) / c},
       {5, 0.790778, (2 - (8 - 2 * r2) * t * s5) / (std::cos(kPi / 6) * c)},
       {8, 1.19543, face},
       {12, 0.253912, top - cut},
       {28, 0.21655, cut}},
      1e-10);
  return {cone.pass && helical.pass, "cone: " + cone.detail + "; helical: " + helical.detail};
}

Outcome criterion_helical_degeneracy() {
  const auto g = ImageGrid::make_3d(4, 4, 4);
  bool same = compute_row(HelicalEquiangular{4.0, kPi / 4, kPi / 12, kPi / 12, 0.0}, g) ==
              compute_row(ConeEquiangular{4.0, kPi / 4, kPi / 12, kPi / 12}, g);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-0.5, 0.5), rot(0, 2 * kPi);
  int cases = 1;
  for (; cases < 500; ++cases) {
    const double p = rot(rng), a = ang(rng), b = ang(rng);
    same = same && compute_row(HelicalEquiangular{6, p, a, b, 0.0}, g) ==
                       compute_row(ConeEquiangular{6, p, a, b}, g);
    same = same && compute_row(HelicalEquispaced{6, p, a, b, 0.0}, g) ==
                       compute_row(ConeEquispaced{6, p, a, b}, g);
  }
  return {same, "H=0 rows bitwise equal to cone rows over " + std::to_string(cases) +
                    " parameter sets (both detector types)"};
}

Outcome criterion_ambiguity() {
  std::ostringstream o;
  bool pass = true;
  auto expect = [&](const char* name, const SparseRow& row, const std::vector<std::size_t>& idx,
                    double len) {
    bool ok = row.size() == idx.size();
    for (std::size_t r = 0; ok && r < idx.size(); ++r) {
      ok = row.records[r].flat_index == idx[r] && std::abs(row.records[r].length - len) <= 1e-12;
    }
    o << name << (ok ? " ok" : " WRONG") << "; ";
    pass = pass && ok;
  };
  expect("(1.5, 0) on 5x5 -> 5..9",
         intersect_row_2d({1.5, 0.0}, ImageGrid::make_2d(5, 5)), {5, 6, 7, 8, 9}, 1.0);
  expect("(1, 1, 0, 0) on 4^3 -> 20..23",
         intersect_row_3d({1, 1, 0, 0}, ImageGrid::make_3d(4, 4, 4)), {20, 21, 22, 23}, 1.0);
  expect("(-0.5, sqrt2, 0, pi/4) on 3^3 -> {6}",
         intersect_row_3d({-0.5, r2, 0, kPi / 4}, ImageGrid::make_3d(3, 3, 3)), {6}, r2);
  return {pass, o.str()};
}

Outcome criterion_oracle() {
  const auto t0 = Clock::now();
  std::size_t rays = 0, failures = 0;
  std::string first;
  auto record = [&](const std::optional<std::string>& diff, const std::string& where) {
    ++rays;
    if (diff) {
      if (failures++ == 0) first = where + ": " + *diff;
    }
  };
  std::mt19937_64 rng(2024);
  for (std::int64_t n : {1, 2, 3, 5, 8, 17, 32}) {
    const auto g = ImageGrid::make_2d(n, n);
    const double r = 0.5 * r2 * n + 0.5;
    std::uniform_real_distribution<double> s(-r, r), phi(0.0, kPi);
    for (int k = 0; k < 1000; ++k) {
      const ParallelRay2D ray{s(rng), phi(rng)};
      record(oracle::compare_rows(intersect_row_2d(ray, g),
                                  oracle::apply_tie_break(oracle::oracle_row(ray, g), ray, g),
                                  1e-9),
             "2D n=" + std::to_string(n));
    }
  }
  for (std::int64_t n : {1, 2, 3, 4, 8, 16}) {
    const auto g = ImageGrid::make_3d(n, n, n);
    const double r = 0.5 * r3 * n + 0.5;
    std::uniform_real_distribution<double> s(-r, r), phi1(0.0, 2 * kPi), phi2(0.0, kPi / 2);
    for (int k = 0; k < 1000; ++k) {
      const double a = s(rng), b = s(rng), p1 = phi1(rng), p2 = phi2(rng);
      const ParallelRay3D ray{a, b, p1, p2};
      record(oracle::compare_rows(intersect_row_3d(ray, g),
                                  oracle::apply_tie_break(oracle::oracle_row(ray, g), ray, g),
                                  1e-9),
             "3D n=" + std::to_string(n));
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream o;
  o << rays << " rays (1000 per grid size, 2D N in {1,2,3,5,8,17,32}, 3D N in {1,2,3,4,8,16}), "
    << failures << " mismatches, " << secs << " s (limit 30 s)";
  if (failures) o << "; first: " << first;
  return {failures == 0 && secs < 30.0, o.str()};
}

Outcome criterion_chord_adjoint() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst_chord = 0.0;
  int chord_cases = 0;
  for (std::int64_t n : {4, 9, 20}) {
    const auto g2 = ImageGrid::make_2d(n, n);
    for (const auto& ray : perf::sample_rays_2d(n, 200, 10 + n)) {
      double sum = 0.0;
      for (const auto& r : intersect_row_2d(ray, g2).records) sum += r.length;
      worst_chord = std::max(worst_chord, std::abs(sum - oracle::domain_chord_length(ray, g2)));
      ++chord_cases;
    }
    const auto g3 = ImageGrid::make_3d(n, n, n);
    for (const auto& ray : perf::sample_rays_3d(n, 200, 20 + n)) {
      double sum = 0.0;
      for (const auto& r : intersect_row_3d(ray, g3).records) sum += r.length;
      worst_chord = std::max(worst_chord, std::abs(sum - oracle::domain_chord_length(ray, g3)));
      ++chord_cases;
    }
  }

  double worst_adjoint = 0.0;  // |<Ax,y> - <x,A^T y>| / bound-scale
  int adjoint_cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool three = trial % 2;
    const std::int64_t n = three ? 6 : 12;
    const auto grid = three ? ImageGrid::make_3d(n, n, n, 0.7, {0.3, -0.2, 0.1})
                            : ImageGrid::make_2d(n, n, 1.3, {-0.4, 0.25});
    RaySet rays(grid);
    for (int k = 0; k < 60; ++k) {
      if (three) {
        rays.add(ConeEquispaced{20, u(rng) * 7, u(rng) * 6, u(rng) * 6});
      } else {
        rays.add(FanEquiangular{30, u(rng) * 7, u(rng) * 0.4, std::nullopt});
      }
    }
    std::vector<double> xv(grid.unit_count()), yv(rays.size());
    for (auto& v : xv) v = u(rng);
    for (auto& v : yv) v = u(rng);
    const auto ax = forward_project(Image(grid, xv), rays);
    const auto aty = back_project(Sinogram{yv}, rays, grid);
    auto dot = [](std::span<const double> a, std::span<const double> b) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
      return s;
    };
    const double lhs = dot(ax.values, yv), rhs = dot(xv, aty.values());
    const double scale = std::sqrt(dot(ax.values, ax.values) * dot(yv, yv)) +
                         std::sqrt(dot(xv, xv) * dot(aty.values(), aty.values()));
    worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs) / scale);
    ++adjoint_cases;
  }
  std::ostringstream o;
  o << std::scientific << std::setprecision(2) << chord_cases
    << " chord cases, max |sum - chord| = " << worst_chord << " (tol 1e-9); " << adjoint_cases
    << " adjoint cases, max relative gap = " << worst_adjoint << " (tol 1e-12)";
  return {worst_chord <= 1e-9 && worst_adjoint <= 1e-12, o.str()};
}

Outcome criterion_complexity() {
  std::ostringstream o;
  bool pass = true;
  auto series = [&](int dim, std::vector<std::int64_t> sizes, double c) {
    double prev = 0.0;
    o << dim << "D";
    for (auto n : sizes) {
      const auto rep = perf::bench_row(dim, n, 1000, 99);
      const double ratio = prev > 0.0 ? rep.mean_candidates / prev : 0.0;
      o << " N=" << n << ": mean " << rep.mean_candidates << ", max/N " << rep.max_candidates_per_n()
        << ", oracle " << rep.oracle_candidates;
      if (prev > 0.0) o << ", growth " << ratio;
      o << ";";
      pass = pass && rep.max_candidates_per_n() <= c && (prev == 0.0 || ratio <= 2.2);
      prev = rep.mean_candidates;
    }
    o << ' ';
  };
  o.precision(4);
  series(2, {64, 128, 256}, 4.0);
  series(3, {16, 32, 64}, 8.0);
  return {pass, o.str() + "(bounds: growth <= 2.2 per doubling, max <= 4N / 8N)"};
}

Outcome criterion_io() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1e3, 1e3), len(1e-9, 3);
  std::uniform_int_distribution<int> small(1, 9);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    ProjectionMatrix m;
    m.n_cols = static_cast<std::size_t>(small(rng) * small(rng));
    for (int r = 0, rows = small(rng) - 1; r < rows; ++r) {
      SparseRow row;
      for (std::size_t c = 0; c < m.n_cols; ++c) {
        if (small(rng) <= 2) row.records.push_back({c, len(rng)});
      }
      m.rows.push_back(row);
    }
    const auto mb = io::encode_matrix(m);
    if (io::encode_matrix(io::decode_matrix(mb)) != mb) ++mismatches;

    const auto grid = k % 2 ? ImageGrid::make_3d(small(rng), small(rng), small(rng))
                            : ImageGrid::make_2d(small(rng), small(rng));
    std::vector<double> v(grid.unit_count());
    for (auto& x : v) x = u(rng);
    const auto ib = io::encode_dense(io::to_dense(Image(grid, v)));
    if (io::encode_dense(io::to_dense(io::image_from_dense(io::decode_dense(ib), grid))) != ib) {
      ++mismatches;
    }

    Sinogram s;
    s.values.resize(static_cast<std::size_t>(small(rng) - 1));
    for (auto& x : s.values) x = u(rng);
    const auto sb = io::encode_dense(io::to_dense(s));
    if (io::encode_dense(io::to_dense(io::sinogram_from_dense(io::decode_dense(sb)))) != sb) {
      ++mismatches;
    }
  }
  return {mismatches == 0, "1000 matrices, 1000 images, 1000 sinograms; " +
                               std::to_string(mismatches) + " byte mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden 2D parallel (3x3, ray (1, pi/4))", criterion_table1},
      {"golden equiangular fan (4x4, D=4, alpha=pi/2, gamma=-pi/6)", criterion_table2},
      {"golden 3D parallel (3^3, ray (0, 0, pi/4, pi/4))", criterion_table3},
      {"golden circular and helical cone (4^3)", criterion_tables45},
      {"helical degeneracy (H=0 equals cone bitwise)", criterion_helical_degeneracy},
      {"ambiguity suite (larger flat index wins)", criterion_ambiguity},
      {"oracle equivalence", criterion_oracle},
      {"chord conservation and adjoint identity", criterion_chord_adjoint},
      {"linear work growth", criterion_complexity},
      {"io round-trips", criterion_io},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += out.pass ? 0 : 1;
    std::cout << (out.pass ? "PASS" : "FAIL") << " [" << (k + 1) << "] " << criteria[k].first
              << " :: " << out.detail << '\n';
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
