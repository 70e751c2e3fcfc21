#pragma once

#include "xrt/geometry.hpp"
#include "xrt/grid.hpp"
#include "xrt/sparse_row.hpp"

namespace xrt {

/// Intersection lengths (canonical units) of a canonical 2D ray with every
/// pixel it crosses with positive length.
///
/// Columns are swept left to right; for each column only the rows inside the
/// open band of width |tan phi| + 1 are tested, and each surviving pixel gets
/// the exact length C_up - C_low of its merged slab interval. Rays lying on a
/// grid line are assigned to the pixel with the larger flat index.
SparseRow intersect_row_2d(const ParallelRay2D& ray, const ImageGrid& grid);

/// Same result; additionally counts the pixels examined.
SparseRow intersect_row_2d(const ParallelRay2D& ray, const ImageGrid& grid,
                           WorkCounter& counter);

}  // namespace xrt
