#pragma once

#include <optional>
#include <string>

#include "xrt/geometry.hpp"
#include "xrt/grid.hpp"
#include "xrt/sparse_row.hpp"

namespace xrt::oracle {

/// Brute-force reference row: clips the ray against every unit box
/// independently. Direction components with magnitude below 1e-12 are treated
/// as zero and use a closed containment test, so a ray lying on a grid line
/// reports every adjacent unit (no tie-break). Lengths <= 1e-12 are dropped.
SparseRow oracle_row(const ParallelRay2D& ray, const ImageGrid& grid);
SparseRow oracle_row(const ParallelRay3D& ray, const ImageGrid& grid);

/// Length of the ray inside the whole canonical grid box.
double domain_chord_length(const ParallelRay2D& ray, const ImageGrid& grid);
double domain_chord_length(const ParallelRay3D& ray, const ImageGrid& grid);

/// Applies the project tie-break to an oracle row: along every axis the ray
/// does not move on, coincident candidates collapse to the one with the
/// largest flat index.
SparseRow apply_tie_break(const SparseRow& row, const ParallelRay2D& ray,
                          const ImageGrid& grid);
SparseRow apply_tie_break(const SparseRow& row, const ParallelRay3D& ray,
                          const ImageGrid& grid);

/// nullopt when both rows have the same index set and every length pair
/// differs by less than `length_tol`; otherwise a description of the first
/// difference.
std::optional<std::string> compare_rows(const SparseRow& actual, const SparseRow& expected,
                                        double length_tol);

}  // namespace xrt::oracle
