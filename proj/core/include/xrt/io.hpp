#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xrt/projector.hpp"

namespace xrt::io {

// Sparse matrix file, little-endian:
//   "XRTSPMAT" | u32 version=1 | u64 n_rows | u64 n_cols | u64 total_nnz
//   then per row: u64 nnz, nnz x (u64 flat_index, f64 length)
inline constexpr std::string_view kMatrixMagic = "XRTSPMAT";
// Dense vector file, little-endian:
//   "XRTDENSE" | u32 version=1 | u32 dim | dim x u64 shape | f64 payload
inline constexpr std::string_view kDenseMagic = "XRTDENSE";
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::size_t kMatrixHeaderBytes = 36;

using Bytes = std::vector<std::uint8_t>;

Bytes encode_matrix(const ProjectionMatrix& matrix);
/// Throws FormatError naming the byte offset of the first violation. The
/// decoded scale_factor is 1: stored lengths are already physical.
ProjectionMatrix decode_matrix(std::span<const std::uint8_t> bytes);

/// Row-major dense array. Images use shape (ny, nx) or (nz, ny, nx);
/// sinograms use (ray_count).
struct DenseArray {
  std::vector<std::uint64_t> shape;
  std::vector<double> values;

  friend bool operator==(const DenseArray&, const DenseArray&) = default;
};

Bytes encode_dense(const DenseArray& array);
DenseArray decode_dense(std::span<const std::uint8_t> bytes);

DenseArray to_dense(const Image& image);
DenseArray to_dense(const Sinogram& sino);
/// Throws ValidationError if the shape does not match the grid.
Image image_from_dense(const DenseArray& array, const ImageGrid& grid);
Sinogram sinogram_from_dense(const DenseArray& array);

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
Bytes read_bytes(const std::filesystem::path& path);

void write_matrix(const std::filesystem::path& path, const ProjectionMatrix& matrix);
ProjectionMatrix read_matrix(const std::filesystem::path& path);
void write_dense(const std::filesystem::path& path, const DenseArray& array);
DenseArray read_dense(const std::filesystem::path& path);

/// Parses a ray-set configuration:
///
///   # comment
///   grid nx=3 ny=3 [nz=3] [scale=1] [cx=0 cy=0 [cz=0]]
///   parallel2d s=1 phi=0.7853981633974483
///   fan_equiangular D=4 alpha=1.5707963267948966 gamma=-0.5235987755982988
///
/// Angles are radians. Throws ConfigError with the line number of the first
/// malformed or invalid line.
RaySet parse_rayset(std::string_view text);
RaySet read_rayset(const std::filesystem::path& path);

/// Inverse of parse_rayset; numbers use the shortest round-trip form.
std::string format_rayset(const RaySet& rays);

/// Parameter keys that carry angles (for unit conversion at the CLI).
bool is_angle_key(std::string_view key);

}  // namespace xrt::io
