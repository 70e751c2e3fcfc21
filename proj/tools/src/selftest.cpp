#include "xrt_cli/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "xrt/intersect2d.hpp"
#include "xrt/intersect3d.hpp"
#include "xrt/oracle.hpp"
#include "xrt/perfbench.hpp"
#include "xrt/projector.hpp"

namespace xrt::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPrintedTol = 5e-6;

struct Expected {
  std::size_t index;
  double printed;
  double exact;
};

struct GoldenSuite {
  const char* name;
  ImageGrid grid;
  BeamSpec spec;
  std::vector<Expected> expected;
  double exact_tol;
};

std::vector<GoldenSuite> golden_suites() {
  const double r2 = std::numbers::sqrt2, r3 = std::numbers::sqrt3;
  const double t = std::tan(kPi / 12), c = std::cos(kPi / 12), s = std::sin(kPi / 12);
  const double w = (4 - r2) * t * std::sin(5 * kPi / 12) / std::sin(kPi / 3);
  const double face = 2 * r3 / (3 * c);
  const double cut = (0.5 - (4 * r2 - 4) * t) / s;
  const double top = 2 * (1 - w) / c;

  std::vector<GoldenSuite> out;
  out.push_back({"parallel2d",
                 ImageGrid::make_2d(3, 3),
                 Parallel2D{1.0, kPi / 4},
                 {{0, 0.585787, 2 - r2}, {1, 0.828427, 2 * r2 - 2}, {3, 0.828427, 2 * r2 - 2}},
                 1e-12});
  out.push_back({"fan",
                 ImageGrid::make_2d(4, 4),
                 FanEquiangular{4.0, kPi / 2, -kPi / 6, std::nullopt},
                 {{12, 1.1547, 2 * r3 / 3}, {13, 0.535899, 4 - 2 * r3}},
                 1e-12});
  out.push_back({"parallel3d",
                 ImageGrid::make_3d(3, 3, 3),
                 Parallel3D{0.0, 0.0, kPi / 4, kPi / 4},
                 {{2, 1.12132, 3 * r2 / 2 - 1},
                  {4, 0.292893, 1 - r2 / 2},
                  {13, 1.41421, r2},
                  {22, 0.292893, 1 - r2 / 2},
                  {24, 1.12132, 3 * r2 / 2 - 1}},
                 1e-12});
  out.push_back({"cone",
                 ImageGrid::make_3d(4, 4, 4),
                 ConeEquiangular{4.0, kPi / 4, kPi / 12, kPi / 12},
                 {{1, 1.19543, face},
                  {5, 0.712929, (((4 - r2) * (r2 - 2 * t * std::sin(5 * kPi / 12) /
                                                      std::sin(kPi / 3)) +
                                  4 * r3 / 3) * t - 1) / s},
                  {20, 0.404656, 2 * (w - r3 / 3) / c},
                  {21, 0.0778492, (1 - (4 * r2 - 2) * t) / s},
                  {24, 1.19543, face},
                  {28, 0.470462, top}},
                 1e-10});
  // Unit (0,3,0) is flat 12 and (1,3,0) is flat 28; the short chord through
  // the upper slice belongs to 28.
  out.push_back({"helical",
                 ImageGrid::make_3d(4, 4, 4),
                 HelicalEquiangular{4.0, kPi / 4, kPi / 12, kPi / 12, 0.5},
                 {{1, 1.19543, face},
                  {4, 0.404656, 2 * (w - r3 / 3) / c},
                  {5, 0.790778,
                   (2 - (8 - 2 * r2) * t * std::sin(5 * kPi / 12)) / (std::cos(kPi / 6) * c)},
                  {8, 1.19543, face},
                  {12, 0.253912, top - cut},
                  {28, 0.21655, cut}},
                 1e-10});
  return out;
}

std::optional<std::string> check_suite(const GoldenSuite& suite, SparseRow row) {
  std::ostringstream why;
  why.precision(17);
  if (row.size() != suite.expected.size()) {
    why << suite.name << ": expected " << suite.expected.size() << " records, got "
        << row.size();
    return why.str();
  }
  for (std::size_t n = 0; n < row.size(); ++n) {
    const auto& got = row.records[n];
    const auto& want = suite.expected[n];
    if (got.flat_index != want.index) {
      why << suite.name << ": record " << n << " has index " << got.flat_index << ", expected "
          << want.index;
      return why.str();
    }
    if (std::abs(got.length - want.printed) > kPrintedTol) {
      why << suite.name << ": index " << want.index << " length " << got.length
          << " differs from tabulated " << want.printed;
      return why.str();
    }
    if (std::abs(got.length - want.exact) > suite.exact_tol) {
      why << suite.name << ": index " << want.index << " length " << got.length
          << " differs from closed form " << want.exact;
      return why.str();
    }
  }
  return std::nullopt;
}

// Random canonical rays plus rays placed on grid lines, on a handful of
// small grids.
std::optional<std::string> oracle_sweep() {
  std::uint64_t seed = 7;
  for (std::int64_t n : {1, 2, 3, 5, 8}) {
    const auto g2 = ImageGrid::make_2d(n, n);
    auto rays2 = perf::sample_rays_2d(n, 100, seed++);
    for (int k = -n; k <= n; ++k) {
      rays2.push_back({0.5 * k, 0.0});
      rays2.push_back({0.5 * k, kPi / 2});
    }
    for (const auto& r : rays2) {
      const auto expected = oracle::apply_tie_break(oracle::oracle_row(r, g2), r, g2);
      if (auto d = oracle::compare_rows(intersect_row_2d(r, g2), expected, 1e-9)) {
        std::ostringstream o;
        o.precision(17);
        o << "oracle sweep 2D n=" << n << " ray (" << r.s << ", " << r.phi << "): " << *d;
        return o.str();
      }
    }
    const auto g3 = ImageGrid::make_3d(n, n, n);
    auto rays3 = perf::sample_rays_3d(n, 100, seed++);
    for (int k = -n; k <= n; ++k) {
      rays3.push_back({0.5 * k, 0.5 * k, 0.0, 0.0});
      rays3.push_back({0.5 * k, 0.25, 0.0, kPi / 2});
      rays3.push_back({0.5 * k, 0.5 * k, kPi / 3, 0.0});
    }
    for (const auto& r : rays3) {
      const auto expected = oracle::apply_tie_break(oracle::oracle_row(r, g3), r, g3);
      if (auto d = oracle::compare_rows(intersect_row_3d(r, g3), expected, 1e-9)) {
        std::ostringstream o;
        o.precision(17);
        o << "oracle sweep 3D n=" << n << " ray (" << r.s1 << ", " << r.s2 << ", " << r.phi1
          << ", " << r.phi2 << "): " << *d;
        return o.str();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::string SelftestReport::summary() const {
  std::ostringstream o;
  o << suites_passed << '/' << suites_total << " golden suites, oracle sweep "
    << (oracle_ok ? "OK" : "FAILED");
  return o.str();
}

SelftestReport run_selftest(std::string_view inject_fault) {
  SelftestReport rep;
  const auto suites = golden_suites();
  rep.suites_total = static_cast<int>(suites.size());
  for (const auto& suite : suites) {
    SparseRow row = compute_row(suite.spec, suite.grid);
    if (inject_fault == suite.name && !row.empty()) row.records.front().length += 1e-3;
    if (auto failure = check_suite(suite, std::move(row))) {
      rep.failures.push_back(*failure);
    } else {
      ++rep.suites_passed;
    }
  }
  if (auto failure = oracle_sweep()) {
    rep.failures.push_back(*failure);
  } else {
    rep.oracle_ok = inject_fault != "oracle";
    if (!rep.oracle_ok) rep.failures.push_back("oracle sweep: injected fault");
  }
  return rep;
}

}  // namespace xrt::cli
