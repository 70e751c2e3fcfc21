#pragma once

// Valid-range sweep shared by the 2D and 3D intersection kernels.
//
// Each grid axis is described by its unit count, flat-index stride, the ray's
// offset-point coordinate, and the ray's direction component. Along an
// ascending axis (x) unit u spans [u - N/2, u - N/2 + 1]; along a descending
// axis (y, z) it spans [N/2 - u - 1, N/2 - u].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xrt/sparse_row.hpp"

namespace xrt::detail {

struct Axis {
  std::int64_t count;
  std::size_t stride;
  bool ascending;
  double origin;
  double dir;
};

struct TInterval {
  double lo;
  double hi;
};

struct IndexBand {
  std::int64_t first;
  std::int64_t last;  // inclusive; empty when first > last
};

/// Slab interval of the ray parameter t for unit `u` on a moving axis.
/// Ascending axes start from the lower face (C_x, C_x + 1/d); descending axes
/// from the upper face (C_y - 1/d, C_y).
inline TInterval unit_interval(const Axis& a, std::int64_t u) {
  const double half = 0.5 * static_cast<double>(a.count);
  const double inv = 1.0 / a.dir;
  const double uu = static_cast<double>(u);
  double t0;
  double t1;
  if (a.ascending) {
    t0 = (uu - half - a.origin) * inv;
    t1 = t0 + inv;
  } else {
    t0 = (half - uu - a.origin) * inv;
    t1 = t0 - inv;
  }
  return t0 <= t1 ? TInterval{t0, t1} : TInterval{t1, t0};
}

/// Units along `a` whose slab meets the open coordinate range (cmin, cmax)
/// (widened by tolerance::range), clipped to the grid. This is a filter; the
/// strict interval test decides emission.
inline IndexBand open_band(const Axis& a, double cmin, double cmax) {
  const double half = 0.5 * static_cast<double>(a.count);
  double lo;
  double hi;
  if (a.ascending) {
    lo = cmin + half - 1.0;
    hi = cmax + half;
  } else {
    lo = half - 1.0 - cmax;
    hi = half - cmin;
  }
  const double n = static_cast<double>(a.count);
  const double first = std::max(0.0, std::floor(lo - tolerance::range) + 1.0);
  const double last = std::min(n - 1.0, std::ceil(hi + tolerance::range) - 1.0);
  if (!(first <= last)) return {1, 0};
  return {static_cast<std::int64_t>(first), static_cast<std::int64_t>(last)};
}

inline IndexBand band_over(const Axis& a, const TInterval& t) {
  const double c0 = a.origin + t.lo * a.dir;
  const double c1 = a.origin + t.hi * a.dir;
  return open_band(a, std::min(c0, c1), std::max(c0, c1));
}

/// Unit along a fixed axis (zero direction component) that holds the ray.
/// Uses the closed slab condition; when the ray lies on a grid plane both
/// neighbours qualify and the larger index wins. Empty when the ray is
/// outside the grid along this axis.
inline std::optional<std::int64_t> fixed_unit(const Axis& a) {
  const double half = 0.5 * static_cast<double>(a.count);
  const double tol = tolerance::boundary;
  double lo;
  double hi;
  if (a.ascending) {
    lo = a.origin + half - 1.0;
    hi = a.origin + half;
  } else {
    lo = half - 1.0 - a.origin;
    hi = half - a.origin;
  }
  const double n = static_cast<double>(a.count);
  const double first = std::max(0.0, std::ceil(lo - tol));
  const double last = std::min(n - 1.0, std::floor(hi + tol));
  if (!(first <= last)) return std::nullopt;
  return static_cast<std::int64_t>(last);
}

template <bool Counting>
class RowBuilder {
 public:
  explicit RowBuilder(WorkCounter* counter) : counter_(counter) {}

  void examine() {
    if constexpr (Counting) ++counter_->candidates;
  }

  void emit(std::size_t index, double lo, double hi) {
    const double length = hi - lo;
    if (length > tolerance::emission) records_.push_back({index, length});
  }

  void emit_unit(std::size_t index) { records_.push_back({index, 1.0}); }

  SparseRow finish() {
    std::sort(records_.begin(), records_.end(),
              [](const IntersectionRecord& x, const IntersectionRecord& y) {
                return x.flat_index < y.flat_index;
              });
    return SparseRow{std::move(records_)};
  }

 private:
  WorkCounter* counter_;
  std::vector<IntersectionRecord> records_;
};

/// Ray parallel to `m`: every unit along it, unit length.
template <bool Counting>
void sweep_line(RowBuilder<Counting>& out, const Axis& m, std::size_t base) {
  for (std::int64_t u = 0; u < m.count; ++u) {
    out.examine();
    out.emit_unit(base + static_cast<std::size_t>(u) * m.stride);
  }
}

/// Ray moving along two axes: loop over `a`, test the valid band along `b`.
template <bool Counting>
void sweep_plane(RowBuilder<Counting>& out, const Axis& a, const Axis& b, std::size_t base) {
  for (std::int64_t ua = 0; ua < a.count; ++ua) {
    const TInterval ta = unit_interval(a, ua);
    const IndexBand band = band_over(b, ta);
    for (std::int64_t ub = band.first; ub <= band.last; ++ub) {
      out.examine();
      const TInterval tb = unit_interval(b, ub);
      out.emit(base + static_cast<std::size_t>(ua) * a.stride +
                   static_cast<std::size_t>(ub) * b.stride,
               std::max(ta.lo, tb.lo), std::min(ta.hi, tb.hi));
    }
  }
}

/// Oblique ray: loop over `a`, band along `b`, then per surviving (a, b)
/// pair a band along `c` from the merged interval.
template <bool Counting>
void sweep_volume(RowBuilder<Counting>& out, const Axis& a, const Axis& b, const Axis& c) {
  for (std::int64_t ua = 0; ua < a.count; ++ua) {
    const TInterval ta = unit_interval(a, ua);
    const IndexBand band_b = band_over(b, ta);
    for (std::int64_t ub = band_b.first; ub <= band_b.last; ++ub) {
      const TInterval tb = unit_interval(b, ub);
      const TInterval tab{std::max(ta.lo, tb.lo), std::min(ta.hi, tb.hi)};
      if (!(tab.lo < tab.hi)) continue;
      const IndexBand band_c = band_over(c, tab);
      const std::size_t base = static_cast<std::size_t>(ua) * a.stride +
                               static_cast<std::size_t>(ub) * b.stride;
      for (std::int64_t uc = band_c.first; uc <= band_c.last; ++uc) {
        out.examine();
        const TInterval tc = unit_interval(c, uc);
        out.emit(base + static_cast<std::size_t>(uc) * c.stride, std::max(tab.lo, tc.lo),
                 std::min(tab.hi, tc.hi));
      }
    }
  }
}

}  // namespace xrt::detail
