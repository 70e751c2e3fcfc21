#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace xrt {

struct IntersectionRecord {
  std::size_t flat_index;
  double length;

  friend bool operator==(const IntersectionRecord&, const IntersectionRecord&) = default;
};

/// One projection-matrix row. Records are sorted by strictly increasing
/// flat index and every length is positive; an empty row is a ray that
/// misses the grid.
struct SparseRow {
  std::vector<IntersectionRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }

  friend bool operator==(const SparseRow&, const SparseRow&) = default;
};

/// Number of units whose intersection interval was evaluated.
struct WorkCounter {
  std::uint64_t candidates = 0;
};

/// Thresholds shared by the intersection kernels.
namespace tolerance {
/// |sin| or |cos| below this treats the corresponding direction component as zero.
inline constexpr double axis = 1e-12;
/// Widening applied to open index ranges before the strict interval test.
inline constexpr double range = 1e-12;
/// Records at or below this length are dropped.
inline constexpr double emission = 1e-12;
/// Distance at which an axis-parallel ray is considered to lie on a grid line.
inline constexpr double boundary = 1e-12;
}  // namespace tolerance

}  // namespace xrt
