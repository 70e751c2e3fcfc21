#include "xrt_cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <numbers>
#include <optional>
#include <sstream>

#include "xrt/errors.hpp"
#include "xrt/io.hpp"
#include "xrt/perfbench.hpp"
#include "xrt/projector.hpp"
#include "xrt_cli/gen_rays.hpp"
#include "xrt_cli/selftest.hpp"

namespace xrt::cli {
namespace {

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct RaySource {
  std::string config;
  std::string grid;
  std::vector<std::string> rays;
  bool degrees = false;

  void attach(CLI::App& cmd) {
    auto* c = cmd.add_option("--config", config, "Ray-set configuration file");
    auto* g = cmd.add_option("--grid", grid, "Inline grid, e.g. \"nx=3 ny=3\"");
    auto* r = cmd.add_option("--ray", rays, "Inline ray, e.g. \"parallel2d s=1 phi=0.785\"");
    c->excludes(g)->excludes(r);
    g->needs(r);
    r->needs(g);
    cmd.add_flag("--degrees", degrees, "Angles in the configuration are in degrees");
  }

  RaySet load() const {
    std::string text;
    if (!config.empty()) {
      const auto bytes = io::read_bytes(config);
      text.assign(bytes.begin(), bytes.end());
    } else if (!grid.empty()) {
      text = "grid " + grid + "\n";
      for (const auto& r : rays) text += r + "\n";
    } else {
      throw ValidationError("pass --config or --grid with --ray");
    }
    if (degrees) text = degrees_to_radians(text);
    return io::parse_rayset(text);
  }
};

void print_row(std::ostream& out, const SparseRow& row, const ImageGrid& grid, bool nd,
               bool full) {
  for (const auto& r : row.records) {
    if (nd && grid.dim() == 2) {
      const auto u = unflat_index_2d(r.flat_index, grid);
      out << u.j << ' ' << u.i;
    } else if (nd) {
      const auto u = unflat_index_3d(r.flat_index, grid);
      out << u.k << ' ' << u.j << ' ' << u.i;
    } else {
      out << r.flat_index;
    }
    out << ' ';
    if (full) {
      out << shortest(r.length);
    } else {
      std::ostringstream six;
      six.precision(6);
      six << r.length;
      out << six.str();
    }
    out << '\n';
  }
}

std::vector<std::int64_t> default_sizes(int dim) {
  return dim == 2 ? std::vector<std::int64_t>{64, 128, 256}
                  : std::vector<std::int64_t>{16, 32, 64};
}

}  // namespace

std::string degrees_to_radians(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!first) out << '\n';
    first = false;
    const auto hash = line.find('#');
    const std::string body = line.substr(0, hash);
    const std::string comment = hash == std::string::npos ? "" : line.substr(hash);
    std::istringstream tokens(body);
    std::string tok;
    bool lead = true;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos && io::is_angle_key(std::string_view(tok).substr(0, eq))) {
        double v = 0.0;
        const char* b = tok.data() + eq + 1;
        const char* e = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec == std::errc() && ptr == e) {
          tok = tok.substr(0, eq + 1) + shortest(v * std::numbers::pi / 180.0);
        }
      }
      out << (lead ? "" : " ") << tok;
      lead = false;
    }
    if (!comment.empty()) out << (lead ? "" : " ") << comment;
  }
  if (!text.empty() && text.back() == '\n') out << '\n';
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact X-ray transform line integrals on pixel and voxel grids", "xrt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  unsigned threads = 1;
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker cap (0 = hardware concurrency)")
        ->capture_default_str();
  };

  // row
  auto* row_cmd = app.add_subcommand("row", "Intersection lengths of a single ray");
  RaySource row_src;
  row_src.attach(*row_cmd);
  std::string index_form = "flat";
  bool full_precision = false;
  row_cmd->add_option("--index-form", index_form, "flat or nd")
      ->check(CLI::IsMember({"flat", "nd"}))
      ->capture_default_str();
  row_cmd->add_flag("--full-precision", full_precision,
                    "Print shortest round-trip doubles instead of 6 significant digits");

  // project / backproject / matrix
  auto* project_cmd = app.add_subcommand("project", "Forward projection of an image file");
  RaySource project_src;
  project_src.attach(*project_cmd);
  std::string image_path, sino_path, out_path;
  project_cmd->add_option("--image", image_path, "Dense image file")->required();
  project_cmd->add_option("--out", out_path, "Output sinogram file")->required();
  add_threads(project_cmd);

  auto* back_cmd = app.add_subcommand("backproject", "Adjoint projection of a sinogram file");
  RaySource back_src;
  back_src.attach(*back_cmd);
  back_cmd->add_option("--sino", sino_path, "Dense sinogram file")->required();
  back_cmd->add_option("--out", out_path, "Output image file")->required();
  add_threads(back_cmd);

  auto* matrix_cmd = app.add_subcommand("matrix", "Assemble and store the projection matrix");
  RaySource matrix_src;
  matrix_src.attach(*matrix_cmd);
  matrix_cmd->add_option("--out", out_path, "Output matrix file")->required();
  add_threads(matrix_cmd);

  // gen-rays
  auto* gen_cmd = app.add_subcommand(
      "gen-rays",
      "Write a standard acquisition as a ray-set configuration.\n"
      "Order is view-major, then detector, then detector row. Parallel views use\n"
      "phi = pi*v/V; source views use alpha = 2*pi*v/V (both half-open).\n"
      "Detector parameters are uniform on [-max, max] including both endpoints;\n"
      "a single detector sits at 0. Helical offsets are H_v = pitch*v/V.\n"
      "Unset field-of-view limits default to the circle that encloses the grid.");
  GenRaysOptions gen;
  bool gen_degrees = false;
  std::string gen_out;
  gen_cmd->add_option("--geometry", gen.geometry, "Geometry tag")
      ->required()
      ->check(CLI::IsMember({"parallel2d", "fan_equiangular", "fan_equispaced", "parallel3d",
                             "cone_equiangular", "cone_equispaced", "helical_equiangular",
                             "helical_equispaced"}));
  gen_cmd->add_option("--views", gen.views, "Number of views V")->required();
  gen_cmd->add_option("--dets", gen.dets, "Detector samples per view K")->required();
  gen_cmd->add_option("--rows", gen.rows, "Detector rows (3D geometries)")->capture_default_str();
  gen_cmd->add_option("--nx", gen.nx, "Grid columns")->required();
  gen_cmd->add_option("--ny", gen.ny, "Grid rows")->required();
  gen_cmd->add_option("--nz", gen.nz, "Grid slices (3D geometries)");
  gen_cmd->add_option("--scale", gen.scale, "Unit side length")->capture_default_str();
  gen_cmd->add_option("--cx", gen.cx, "Grid center x");
  gen_cmd->add_option("--cy", gen.cy, "Grid center y");
  gen_cmd->add_option("--cz", gen.cz, "Grid center z");
  gen_cmd->add_option("--D", gen.D, "Source-to-rotation-center distance");
  gen_cmd->add_option("--pitch", gen.pitch, "Helical advance over all views");
  gen_cmd->add_option("--phi2", gen.phi2, "Elevation of parallel3d rays");
  gen_cmd->add_option("--s-max", gen.s_max, "Parallel offset limit");
  gen_cmd->add_option("--gamma-max", gen.gamma_max, "Equiangular fan half-angle");
  gen_cmd->add_option("--t-max", gen.t_max, "Equispaced detector half-width");
  gen_cmd->add_option("--alpha-max", gen.alpha_max, "Cone equiangular in-plane half-angle");
  gen_cmd->add_option("--beta-max", gen.beta_max, "Cone equiangular elevation half-angle");
  gen_cmd->add_option("--h-max", gen.h_max, "Cone equispaced detector half-height");
  gen_cmd->add_flag("--degrees", gen_degrees, "Angle limits are in degrees");
  gen_cmd->add_option("--out", gen_out, "Output file (default: standard output)");

  // selftest
  auto* self_cmd = app.add_subcommand("selftest", "Golden suites and oracle sweep");
  std::string inject_fault;
  self_cmd->add_option("--inject-fault", inject_fault)->group("");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Row timing and work counts");
  int bench_dim = 0;
  std::vector<std::int64_t> bench_sizes;
  std::size_t bench_rays = 1000;
  std::uint64_t bench_seed = 1;
  bool bench_scaling = false;
  bench_cmd->add_option("--dim", bench_dim, "2, 3, or 0 for both")
      ->check(CLI::IsMember({0, 2, 3}))
      ->capture_default_str();
  bench_cmd->add_option("--sizes", bench_sizes, "Grid sizes N");
  bench_cmd->add_option("--rays", bench_rays, "Rays per size")->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "Sampling seed")->capture_default_str();
  bench_cmd->add_flag("--scaling", bench_scaling, "Also report rows/s at 1, 2 and 4 workers");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*row_cmd) {
      const RaySet rays = row_src.load();
      if (rays.size() != 1) {
        throw ValidationError("row needs exactly one ray, got " + std::to_string(rays.size()));
      }
      print_row(out, compute_row(rays.specs().front(), rays.grid()), rays.grid(),
                index_form == "nd", full_precision);
    } else if (*project_cmd) {
      const RaySet rays = project_src.load();
      const Image image = io::image_from_dense(io::read_dense(image_path), rays.grid());
      io::write_dense(out_path, io::to_dense(forward_project(image, rays, {threads})));
    } else if (*back_cmd) {
      const RaySet rays = back_src.load();
      const Sinogram sino = io::sinogram_from_dense(io::read_dense(sino_path));
      io::write_dense(out_path,
                      io::to_dense(back_project(sino, rays, rays.grid(), {threads})));
    } else if (*matrix_cmd) {
      const RaySet rays = matrix_src.load();
      io::write_matrix(out_path, assemble_matrix(rays, rays.grid(), {threads}));
    } else if (*gen_cmd) {
      if (gen_degrees) {
        constexpr double k = std::numbers::pi / 180.0;
        gen.phi2 *= k;
        for (auto* a : {&gen.gamma_max, &gen.alpha_max, &gen.beta_max}) {
          if (*a) **a *= k;
        }
      }
      const std::string text = io::format_rayset(generate_rays(gen));
      if (gen_out.empty()) {
        out << text;
      } else {
        io::write_bytes(gen_out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                           text.size()));
      }
    } else if (*self_cmd) {
      const SelftestReport rep = run_selftest(inject_fault);
      for (const auto& f : rep.failures) err << "FAIL " << f << '\n';
      out << rep.summary() << '\n';
      return rep.ok() ? kOk : kSelftestFailed;
    } else if (*bench_cmd) {
      std::vector<int> dims = bench_dim == 0 ? std::vector<int>{2, 3} : std::vector<int>{bench_dim};
      for (int dim : dims) {
        std::vector<perf::RowBenchReport> reports;
        for (auto n : bench_sizes.empty() ? default_sizes(dim) : bench_sizes) {
          reports.push_back(perf::bench_row(dim, n, bench_rays, bench_seed));
        }
        out << perf::format_reports(reports);
        if (bench_scaling) {
          const auto n = (bench_sizes.empty() ? default_sizes(dim) : bench_sizes).back();
          out << "\nmatrix assembly, dim " << dim << ", N " << n << '\n'
              << perf::format_scaling(
                     perf::parallel_scaling(dim, n, bench_rays, {1, 2, 4}, bench_seed));
        }
        out << '\n';
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const BoundsError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace xrt::cli
