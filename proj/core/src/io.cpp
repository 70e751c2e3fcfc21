#include "xrt/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "xrt/errors.hpp"

namespace xrt::io {
namespace {

class Writer {
 public:
  void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  void u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  Bytes take() { return std::move(out_); }
  void reserve(std::size_t n) { out_.reserve(n); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

  void magic(std::string_view expected) {
    need(expected.size(), "magic");
    for (std::size_t b = 0; b < expected.size(); ++b) {
      if (in_[pos_ + b] != static_cast<std::uint8_t>(expected[b])) {
        throw FormatError(pos_, "bad magic, expected \"" + std::string(expected) + "\"");
      }
    }
    pos_ += expected.size();
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in_[pos_ + b]) << (8 * b);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in_[pos_ + b]) << (8 * b);
    pos_ += 8;
    return v;
  }
  double f64(const char* what) { return std::bit_cast<double>(u64(what)); }

  void expect_end() const {
    if (pos_ != in_.size()) {
      throw FormatError(pos_, std::to_string(in_.size() - pos_) + " trailing bytes");
    }
  }

 private:
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw FormatError(pos_, std::string("truncated while reading ") + what);
    }
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void check_version(Reader& r) {
  const std::size_t at = r.offset();
  const std::uint32_t v = r.u32("version");
  if (v != kFormatVersion) {
    throw FormatError(at, "unsupported version " + std::to_string(v));
  }
}

}  // namespace

Bytes encode_matrix(const ProjectionMatrix& matrix) {
  Writer w;
  w.reserve(kMatrixHeaderBytes + 8 * matrix.n_rows() + 16 * matrix.nnz());
  w.bytes(kMatrixMagic);
  w.u32(kFormatVersion);
  w.u64(matrix.n_rows());
  w.u64(matrix.n_cols);
  w.u64(matrix.nnz());
  for (const auto& row : matrix.rows) {
    w.u64(row.size());
    for (const auto& r : row.records) {
      w.u64(r.flat_index);
      w.f64(r.length);
    }
  }
  return w.take();
}

ProjectionMatrix decode_matrix(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.magic(kMatrixMagic);
  check_version(r);
  const std::uint64_t n_rows = r.u64("n_rows");
  const std::uint64_t n_cols = r.u64("n_cols");
  const std::size_t nnz_at = r.offset();
  const std::uint64_t total_nnz = r.u64("total_nnz");
  if (n_rows > r.remaining() / 8) {
    throw FormatError(r.offset(), "n_rows exceeds file size");
  }

  ProjectionMatrix m;
  m.n_cols = n_cols;
  m.rows.resize(n_rows);
  std::uint64_t seen = 0;
  for (auto& row : m.rows) {
    const std::size_t row_at = r.offset();
    const std::uint64_t nnz = r.u64("row nnz");
    if (nnz > r.remaining() / 16) throw FormatError(row_at, "row nnz exceeds file size");
    row.records.reserve(nnz);
    for (std::uint64_t e = 0; e < nnz; ++e) {
      const std::size_t at = r.offset();
      const std::uint64_t index = r.u64("index");
      if (index >= n_cols) {
        throw FormatError(at, "index " + std::to_string(index) + " >= n_cols " +
                                  std::to_string(n_cols));
      }
      if (!row.records.empty() && index <= row.records.back().flat_index) {
        throw FormatError(at, "row indices must be strictly increasing");
      }
      const std::size_t len_at = r.offset();
      const double length = r.f64("length");
      if (!std::isfinite(length) || !(length > 0.0)) {
        throw FormatError(len_at, "length must be positive and finite");
      }
      row.records.push_back({static_cast<std::size_t>(index), length});
    }
    seen += nnz;
  }
  if (seen != total_nnz) {
    throw FormatError(nnz_at, "total_nnz " + std::to_string(total_nnz) +
                                  " != sum of row counts " + std::to_string(seen));
  }
  r.expect_end();
  return m;
}

Bytes encode_dense(const DenseArray& array) {
  std::uint64_t expected = 1;
  for (auto s : array.shape) expected *= s;
  if (array.shape.empty() || expected != array.values.size()) {
    throw ValidationError("dense array shape does not match its payload");
  }
  Writer w;
  w.reserve(16 + 8 * array.shape.size() + 8 * array.values.size());
  w.bytes(kDenseMagic);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(array.shape.size()));
  for (auto s : array.shape) w.u64(s);
  for (double v : array.values) w.f64(v);
  return w.take();
}

DenseArray decode_dense(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.magic(kDenseMagic);
  check_version(r);
  const std::size_t dim_at = r.offset();
  const std::uint32_t dim = r.u32("dim");
  if (dim < 1 || dim > 3) throw FormatError(dim_at, "dim must be 1, 2 or 3");
  DenseArray a;
  std::uint64_t count = 1;
  for (std::uint32_t d = 0; d < dim; ++d) {
    const std::size_t at = r.offset();
    const std::uint64_t s = r.u64("shape");
    if (s != 0 && count > UINT64_MAX / s) throw FormatError(at, "shape product overflows");
    count *= s;
    a.shape.push_back(s);
  }
  if (count != r.remaining() / 8 || r.remaining() % 8 != 0) {
    throw FormatError(r.offset(), "payload holds " + std::to_string(r.remaining()) +
                                      " bytes, shape needs " + std::to_string(count * 8));
  }
  a.values.resize(count);
  for (auto& v : a.values) v = r.f64("value");
  r.expect_end();
  return a;
}

DenseArray to_dense(const Image& image) {
  const auto& g = image.grid();
  DenseArray a;
  if (g.dim() == 2) {
    a.shape = {static_cast<std::uint64_t>(g.ny()), static_cast<std::uint64_t>(g.nx())};
  } else {
    a.shape = {static_cast<std::uint64_t>(g.nz()), static_cast<std::uint64_t>(g.ny()),
               static_cast<std::uint64_t>(g.nx())};
  }
  a.values.assign(image.values().begin(), image.values().end());
  return a;
}

DenseArray to_dense(const Sinogram& sino) { return {{sino.ray_count()}, sino.values}; }

Image image_from_dense(const DenseArray& array, const ImageGrid& grid) {
  const DenseArray probe = to_dense(Image::zeros(grid));
  if (array.shape != probe.shape) {
    throw ValidationError("image shape does not match the configured grid");
  }
  return Image(grid, array.values);
}

Sinogram sinogram_from_dense(const DenseArray& array) {
  if (array.shape.size() != 1) throw ValidationError("sinogram file must be 1-dimensional");
  return Sinogram{array.values};
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Bytes read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failed: " + path.string());
  return data;
}

void write_matrix(const std::filesystem::path& path, const ProjectionMatrix& matrix) {
  write_bytes(path, encode_matrix(matrix));
}

ProjectionMatrix read_matrix(const std::filesystem::path& path) {
  return decode_matrix(read_bytes(path));
}

void write_dense(const std::filesystem::path& path, const DenseArray& array) {
  write_bytes(path, encode_dense(array));
}

DenseArray read_dense(const std::filesystem::path& path) {
  return decode_dense(read_bytes(path));
}

// ---------------------------------------------------------------------------
// Ray-set text format

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t p = 0;
  while (p < line.size()) {
    while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
    std::size_t q = p;
    while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
    if (q > p) out.push_back(line.substr(p, q - p));
    p = q;
  }
  return out;
}

using Params = std::map<std::string, std::string_view, std::less<>>;

Params parse_pairs(std::span<const std::string_view> tokens, std::size_t line) {
  Params params;
  for (auto tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == tok.size()) {
      throw ConfigError(line, "expected key=value, got \"" + std::string(tok) + "\"");
    }
    auto [it, inserted] = params.emplace(std::string(tok.substr(0, eq)), tok.substr(eq + 1));
    if (!inserted) throw ConfigError(line, "duplicate key \"" + it->first + "\"");
  }
  return params;
}

double parse_real(std::string_view text, std::string_view key, std::size_t line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(line, "invalid number for " + std::string(key) + ": \"" +
                                std::string(text) + "\"");
  }
  if (!std::isfinite(v)) throw ConfigError(line, std::string(key) + " must be finite");
  return v;
}

std::int64_t parse_count(std::string_view text, std::string_view key, std::size_t line) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || v < 1) {
    throw ConfigError(line, std::string(key) + " must be a positive integer, got \"" +
                                std::string(text) + "\"");
  }
  return v;
}

class ParamReader {
 public:
  ParamReader(Params params, std::size_t line) : params_(std::move(params)), line_(line) {}

  std::optional<std::string_view> take(std::string_view key) {
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    auto v = it->second;
    params_.erase(it);
    return v;
  }
  double real(std::string_view key) {
    auto v = take(key);
    if (!v) throw ConfigError(line_, "missing required key \"" + std::string(key) + "\"");
    return parse_real(*v, key, line_);
  }
  std::optional<double> optional_real(std::string_view key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    return parse_real(*v, key, line_);
  }
  void finish() const {
    if (!params_.empty()) {
      throw ConfigError(line_, "unknown key \"" + params_.begin()->first + "\"");
    }
  }

 private:
  Params params_;
  std::size_t line_;
};

ImageGrid parse_grid(std::span<const std::string_view> tokens, std::size_t line) {
  ParamReader p(parse_pairs(tokens, line), line);
  auto count = [&](std::string_view key) -> std::optional<std::int64_t> {
    auto v = p.take(key);
    if (!v) return std::nullopt;
    return parse_count(*v, key, line);
  };
  const auto nx = count("nx");
  const auto ny = count("ny");
  const auto nz = count("nz");
  if (!nx || !ny) throw ConfigError(line, "grid needs nx and ny");
  const double scale = p.optional_real("scale").value_or(1.0);
  const double cx = p.optional_real("cx").value_or(0.0);
  const double cy = p.optional_real("cy").value_or(0.0);
  std::optional<double> cz;
  if (nz) cz = p.optional_real("cz");
  p.finish();
  try {
    if (nz) return ImageGrid::make_3d(*nx, *ny, *nz, scale, {cx, cy, cz.value_or(0.0)});
    return ImageGrid::make_2d(*nx, *ny, scale, {cx, cy});
  } catch (const ValidationError& e) {
    throw ConfigError(line, e.what());
  }
}

BeamSpec parse_beam(std::string_view tag, std::span<const std::string_view> tokens,
                    std::size_t line) {
  ParamReader p(parse_pairs(tokens, line), line);
  BeamSpec spec;
  if (tag == "parallel2d") {
    spec = Parallel2D{p.real("s"), p.real("phi")};
  } else if (tag == "fan_equiangular") {
    spec = FanEquiangular{p.real("D"), p.real("alpha"), p.real("gamma"),
                          p.optional_real("gamma_max")};
  } else if (tag == "fan_equispaced") {
    spec = FanEquispaced{p.real("D"), p.real("alpha"), p.real("t"), p.optional_real("t_max")};
  } else if (tag == "parallel3d") {
    spec = Parallel3D{p.real("s1"), p.real("s2"), p.real("phi1"), p.real("phi2")};
  } else if (tag == "cone_equiangular") {
    spec = ConeEquiangular{p.real("D"), p.real("phi1p"), p.real("alpha"), p.real("beta")};
  } else if (tag == "cone_equispaced") {
    spec = ConeEquispaced{p.real("D"), p.real("phi1p"), p.real("t"), p.real("h")};
  } else if (tag == "helical_equiangular") {
    spec = HelicalEquiangular{p.real("D"), p.real("phi1p"), p.real("alpha"), p.real("beta"),
                              p.real("H")};
  } else if (tag == "helical_equispaced") {
    spec = HelicalEquispaced{p.real("D"), p.real("phi1p"), p.real("t"), p.real("h"),
                             p.real("H")};
  } else {
    throw ConfigError(line, "unknown geometry tag \"" + std::string(tag) + "\"");
  }
  p.finish();
  return spec;
}

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

bool is_angle_key(std::string_view key) {
  return key == "phi" || key == "alpha" || key == "gamma" || key == "gamma_max" ||
         key == "phi1" || key == "phi2" || key == "phi1p" || key == "beta";
}

RaySet parse_rayset(std::string_view text) {
  std::optional<RaySet> rays;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    const std::span<const std::string_view> args(tokens.begin() + 1, tokens.end());
    if (tokens[0] == "grid") {
      if (rays) throw ConfigError(line_no, "duplicate grid line");
      rays.emplace(parse_grid(args, line_no));
      continue;
    }
    if (!rays) throw ConfigError(line_no, "the grid line must come first");
    const BeamSpec spec = parse_beam(tokens[0], args, line_no);
    try {
      rays->add(spec);
    } catch (const ValidationError& e) {
      throw ConfigError(line_no, e.what());
    }
  }
  if (!rays) throw ConfigError(std::max<std::size_t>(line_no, 1), "missing grid line");
  return std::move(*rays);
}

RaySet read_rayset(const std::filesystem::path& path) {
  const Bytes data = read_bytes(path);
  return parse_rayset(std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

std::string format_rayset(const RaySet& rays) {
  std::ostringstream out;
  const auto& g = rays.grid();
  out << "grid nx=" << g.nx() << " ny=" << g.ny();
  if (g.dim() == 3) out << " nz=" << g.nz();
  out << " scale=" << number(g.scale()) << " cx=" << number(g.center()[0])
      << " cy=" << number(g.center()[1]);
  if (g.dim() == 3) out << " cz=" << number(g.center()[2]);
  out << '\n';

  struct Visitor {
    std::ostringstream& o;
    void kv(const char* k, double v) const { o << ' ' << k << '=' << number(v); }
    void operator()(const Parallel2D& b) const {
      o << "parallel2d";
      kv("s", b.s);
      kv("phi", b.phi);
    }
    void operator()(const FanEquiangular& b) const {
      o << "fan_equiangular";
      kv("D", b.D);
      kv("alpha", b.alpha);
      kv("gamma", b.gamma);
      if (b.gamma_max) kv("gamma_max", *b.gamma_max);
    }
    void operator()(const FanEquispaced& b) const {
      o << "fan_equispaced";
      kv("D", b.D);
      kv("alpha", b.alpha);
      kv("t", b.t);
      if (b.t_max) kv("t_max", *b.t_max);
    }
    void operator()(const Parallel3D& b) const {
      o << "parallel3d";
      kv("s1", b.s1);
      kv("s2", b.s2);
      kv("phi1", b.phi1);
      kv("phi2", b.phi2);
    }
    void operator()(const ConeEquiangular& b) const {
      o << "cone_equiangular";
      kv("D", b.D);
      kv("phi1p", b.phi1p);
      kv("alpha", b.alpha);
      kv("beta", b.beta);
    }
    void operator()(const ConeEquispaced& b) const {
      o << "cone_equispaced";
      kv("D", b.D);
      kv("phi1p", b.phi1p);
      kv("t", b.t);
      kv("h", b.h);
    }
    void operator()(const HelicalEquiangular& b) const {
      o << "helical_equiangular";
      kv("D", b.D);
      kv("phi1p", b.phi1p);
      kv("alpha", b.alpha);
      kv("beta", b.beta);
      kv("H", b.H);
    }
    void operator()(const HelicalEquispaced& b) const {
      o << "helical_equispaced";
      kv("D", b.D);
      kv("phi1p", b.phi1p);
      kv("t", b.t);
      kv("h", b.h);
      kv("H", b.H);
    }
  };
  for (const auto& spec : rays.specs()) {
    std::visit(Visitor{out}, spec);
    out << '\n';
  }
  return out.str();
}

}  // namespace xrt::io
