#pragma once

#include "xrt/geometry.hpp"
#include "xrt/grid.hpp"
#include "xrt/sparse_row.hpp"

namespace xrt {

/// Intersection lengths (canonical units) of a canonical 3D ray with every
/// voxel it crosses with positive length.
///
/// Routing follows the direction components: oblique rays loop over i with a
/// valid-j band and, per j, a valid-k band; rays parallel to a coordinate
/// plane fix the normal index and sweep the plane; axis-parallel rays fix two
/// indices and take unit lengths. Coincidences with grid planes resolve to the
/// larger flat index.
SparseRow intersect_row_3d(const ParallelRay3D& ray, const ImageGrid& grid);

SparseRow intersect_row_3d(const ParallelRay3D& ray, const ImageGrid& grid,
                           WorkCounter& counter);

}  // namespace xrt
