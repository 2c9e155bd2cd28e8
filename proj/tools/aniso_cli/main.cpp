// aniso: synthetic image generation, angular spectral analysis, rotation
// registration and benchmark tables from the command line.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <aniso/aniso.hpp>
#include <aniso/bresenham.hpp>
#include <aniso/io/image_file.hpp>
#include <aniso/io/records.hpp>
#include <aniso/io/svg.hpp>

#include "bench.hpp"
#include "pool.hpp"

namespace fs = std::filesystem;
using namespace aniso;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIo = 2, kNumerical = 3 };

struct Options {
  std::string method = "cake";
  int angles = 180;
  std::string window = "disk-hann";
  double window_radius = 1.0;
  std::string refine = "on";
  std::uint64_t seed = 0;
  int n = 1;
  int trials = 36;
  std::string out = ".";
  int threads = cli::default_threads();
  CakeParams cake;
  RidgeParams ridge;
  double r_lo = 0.02;
  double r_hi = 1.0;
  int size = 256;
  int atoms = 300;
  double mu = 60.0;
  double sigma = 50.0;
  double scale_min = 4.0;
  double scale_max = 12.0;
};

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "all") return {cli::kAllMethods.begin(), cli::kAllMethods.end()};
  return {parse_method(s)};
}

cli::AnalysisConfig analysis_config(const Options& o) {
  cli::AnalysisConfig c;
  c.methods = parse_methods(o.method);
  detail::require(o.angles >= 4, "--angles must be at least 4");
  c.angles = o.angles;
  c.window.kind = o.window == "none" ? WindowKind::None : WindowKind::DiskHann;
  detail::require(o.window_radius > 0.0, "--window-radius must be positive");
  c.window.radius = o.window_radius;
  c.cake = o.cake;
  c.cake.r_lo = o.r_lo;
  c.cake.r_hi = o.r_hi;
  c.ridge = o.ridge;
  c.ridge.r_lo = o.r_lo;
  c.ridge.r_hi = o.r_hi;
  c.refine = o.refine == "on";
  c.seed = o.seed;
  detail::require(o.trials >= 1, "--trials must be at least 1");
  c.trials = o.trials;
  c.threads = o.threads;
  return c;
}

GaborMixSpec gabor_spec(const Options& o) {
  GaborMixSpec g;
  g.atoms = o.atoms;
  g.mu = o.mu;
  g.sigma = o.sigma;
  g.scale_min = o.scale_min;
  g.scale_max = o.scale_max;
  g.width = o.size;
  g.height = o.size;
  return g;
}

std::string method_params(const cli::AnalysisConfig& c, Method m) {
  char buf[160];
  switch (m) {
    case Method::CakeWavelet:
      std::snprintf(buf, sizeof buf, "p=%g;half_width=%g;r_lo=%g;r_hi=%g", c.cake.exponent,
                    c.cake.half_width_deg, c.cake.r_lo, c.cake.r_hi);
      break;
    case Method::Ridge:
      std::snprintf(buf, sizeof buf, "sigma=%g;r_lo=%g;r_hi=%g", c.ridge.sigma, c.ridge.r_lo,
                    c.ridge.r_hi);
      break;
    case Method::Binning: buf[0] = '\0'; break;
  }
  return buf;
}

fs::path ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

std::string write_out(const fs::path& dir, const std::string& name, const std::string& text) {
  const std::string path = (dir / name).string();
  io::write_text(path, text);
  return path;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string kind = "gabor";
  double angle = 25.0;
  double wavelength = 8.0;
  std::string format = "anim";
};

int cmd_synth(const Options& o, const SynthArgs& a) {
  const fs::path dir = ensure_dir(o.out);
  const std::string ext = a.format == "png" ? ".png" : ".anim";
  auto emit = [&](const std::string& stem, const SyntheticImage& s, io::KeyValueRecord meta) {
    io::write_image((dir / (stem + ext)).string(), s.image);
    meta.set("kind", kind_name(s.truth.kind)).set("width", s.image.width()).set("height", s.image.height());
    write_out(dir, stem + ".meta", meta.str());
    write_out(dir, stem + "_truth.csv", io::profile_csv(s.truth.reference_profile(o.angles)));
    std::cout << (dir / (stem + ext)).string() << "\n";
  };
  if (a.kind == "oscillation") {
    const auto s = gen_oriented_oscillation(a.angle, a.wavelength, o.size, o.size);
    io::KeyValueRecord meta;
    meta.set("angle_deg", a.angle).set("wavelength_px", a.wavelength);
    char stem[64];
    std::snprintf(stem, sizeof stem, "oscillation_%g", a.angle);
    emit(stem, s, meta);
    return kOk;
  }
  detail::require(o.n >= 1, "--n must be at least 1");
  for (int i = 0; i < o.n; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    io::KeyValueRecord meta;
    meta.set("seed", std::to_string(seed));
    if (a.kind == "gabor") {
      GaborMixSpec g = gabor_spec(o);
      g.seed = seed;
      meta.set("atoms", g.atoms).set("mu_deg", g.mu).set("sigma", g.sigma)
          .set("scale_min", g.scale_min).set("scale_max", g.scale_max)
          .set("position_fraction", g.position_fraction);
      emit("gabor_" + std::to_string(seed), gen_gabor_image(g), meta);
    } else if (a.kind == "isotropic") {
      const NoiseBand band;
      meta.set("band_lo", band.lo).set("band_hi", band.hi).set("band_edge", band.edge);
      emit("isotropic_" + std::to_string(seed), gen_isotropic(o.size, o.size, seed, band), meta);
    } else {
      throw ValidationError("unknown --kind '" + a.kind + "'");
    }
  }
  return kOk;
}

// ---- analyze --------------------------------------------------------------

int cmd_analyze(const Options& o, const std::string& path) {
  const auto cfg = analysis_config(o);
  const Image img = io::read_image(path);
  const fs::path dir = ensure_dir(o.out);
  const std::string stem = fs::path(path).stem().string();
  io::KeyValueRecord meta;
  meta.set("image", path).set("angles", cfg.angles).set("refine", cfg.refine ? "on" : "off");
  std::vector<std::pair<std::string, AngularProfile>> series;
  for (Method m : cfg.methods) {
    const auto bank = make_bank(m, img.height(), img.width(), cfg.angles, cfg.cake, cfg.ridge);
    const auto p = normalize(analyze(img, bank, cfg.window));
    const auto est = principal_orientation(p, cfg.refine);
    const std::string name(method_name(m));
    write_out(dir, stem + "_" + name + ".csv", io::profile_csv(p));
    meta.set("eta_deg_" + name, est.eta).set("peak_to_mean_" + name, peak_to_mean(p));
    const std::string params = method_params(cfg, m);
    if (!params.empty()) meta.set("params_" + name, params);
    std::cout << name << " eta_deg=" << io::format_double(est.eta) << "\n";
    series.emplace_back(name, p);
  }
  write_out(dir, stem + ".meta", meta.str());
  write_out(dir, stem + "_profiles.svg", io::profiles_svg(series, stem));
  return kOk;
}

// ---- register -------------------------------------------------------------

int cmd_register(const Options& o, const std::string& p1, const std::string& p2) {
  auto cfg = analysis_config(o);
  detail::require(cfg.methods.size() == 1, "register takes a single --method");
  const Image x1 = io::read_image(p1);
  const Image x2 = io::read_image(p2);
  detail::require(x1.same_shape(x2), "images must have the same dimensions");
  const auto bank = make_bank(cfg.methods[0], x1.height(), x1.width(), cfg.angles, cfg.cake, cfg.ridge);
  const auto r = register_images(x1, x2, bank, cfg.window, cfg.refine);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  auto rec = io::registration_record(r);
  const std::string text = rec.str();
  std::cout << text;
  if (o.out != ".") write_out(ensure_dir(o.out), "register.txt", text);
  return kOk;
}

// ---- rotate ---------------------------------------------------------------

int cmd_rotate(const std::string& in, const std::string& out, double angle) {
  detail::require(angle >= 0.0 && angle < 360.0, "angle must be in [0, 360)");
  io::write_image(out, rotate_bilinear(io::read_image(in), angle));
  return kOk;
}

// ---- export-mask ----------------------------------------------------------

int cmd_export_mask(const Options& o, int index, double line_angle, const std::string& out) {
  const FrequencyLayout layout(o.size, o.size);
  std::vector<double> mask;
  if (line_angle >= 0.0) {
    mask = line_mask(layout, line_angle);
  } else {
    const auto cfg = analysis_config(o);
    detail::require(cfg.methods.size() == 1, "export-mask takes a single --method");
    detail::require(index >= 0 && index < cfg.angles, "--index must be in [0, angles)");
    mask = make_bank(cfg.methods[0], o.size, o.size, cfg.angles, cfg.cake, cfg.ridge).mask(index);
  }
  double peak = 0.0;
  for (double v : mask) peak = std::max(peak, v);
  io::write_png(out, Image(o.size, o.size, std::move(mask)), 0.0, peak > 0.0 ? peak : 1.0);
  return kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string suite = "table1";
  std::vector<std::string> pair;
  std::vector<double> sigmas{5.0, 20.0, 50.0};
  int pairs = 10;
};

int cmd_bench(const Options& o, const BenchArgs& a) {
  auto cfg = analysis_config(o);
  const fs::path dir = ensure_dir(o.out);
  if (a.suite == "table1") {
    cli::Table1Config t1;
    detail::require(o.n >= 1, "--n must be at least 1");
    t1.images = o.n;
    t1.sigmas = a.sigmas;
    t1.gabor = gabor_spec(o);
    for (std::size_t k = 0; k < t1.sigmas.size(); ++k) {
      const double sigma = t1.sigmas[k];
      detail::require(sigma >= 0.0, "--sigmas must be >= 0");
      const auto table = cli::run_table1(cfg, t1, sigma, o.seed);
      char stem[64];
      std::snprintf(stem, sizeof stem, "table1_sigma%g", sigma);
      write_out(dir, std::string(stem) + ".csv", io::metric_csv(table.rows));
      write_out(dir, std::string(stem) + "_extra.csv", io::metric_csv(table.extra));
      const std::string text = cli::text_table(table.rows, std::string(stem));
      write_out(dir, std::string(stem) + ".txt", text);
      std::cout << text << "\n";
    }
    return kOk;
  }
  if (a.suite == "register") {
    cli::BenchTable table;
    if (!a.pair.empty()) {
      detail::require(a.pair.size() == 2, "--pair takes exactly two image paths");
      const Image x1 = io::read_image(a.pair[0]);
      const Image x2 = io::read_image(a.pair[1]);
      detail::require(x1.same_shape(x2), "images must have the same dimensions");
      table = cli::run_register_pair(cfg, x1, x2);
    } else {
      GaborMixSpec g = gabor_spec(o);
      g.seed = o.seed;
      const Image x1 = gen_gabor_image(g).image;
      table = cli::run_register_synthetic(cfg, x1, a.pairs);
      Rng rng(derive_seed(o.seed, 4));
      const double gamma = stratified_angles(1, rng, 360.0)[0];
      const auto eq = cli::run_register_pair(cfg, x1, rotate_bilinear(x1, gamma));
      for (const auto& r : eq.rows)
        if (r.metric == "registration_equivariance_deg") table.rows.push_back(r);
    }
    write_out(dir, "register.csv", io::metric_csv(table.rows));
    const std::string text = cli::text_table(table.rows, "register");
    write_out(dir, "register.txt", text);
    std::cout << text;
    return kOk;
  }
  throw ValidationError("unknown --suite '" + a.suite + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-equivariant angular spectral analysis of images"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  Options o;
  app.add_option("--method", o.method, "cake, ridge, binning or all")
      ->check(CLI::IsMember({"cake", "ridge", "binning", "all"}))
      ->capture_default_str();
  app.add_option("--angles", o.angles, "Number of analysis angles M")->capture_default_str();
  app.add_option("--window", o.window, "Analysis window")
      ->check(CLI::IsMember({"disk-hann", "none"}))
      ->capture_default_str();
  app.add_option("--window-radius", o.window_radius, "Window support, fraction of min(H, W) / 2")
      ->capture_default_str();
  app.add_option("--refine", o.refine, "Sub-grid peak refinement")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Base random seed")->capture_default_str();
  app.add_option("--n", o.n, "Number of images")->capture_default_str();
  app.add_option("--trials", o.trials, "Rotations per equivariance estimate")->capture_default_str();
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads for benchmarks")->capture_default_str();
  app.add_option("--size", o.size, "Side length of generated images")->capture_default_str();
  app.add_option("--atoms", o.atoms, "Gabor atoms per image")->capture_default_str();
  app.add_option("--mu", o.mu, "Gabor orientation mode (deg)")->capture_default_str();
  app.add_option("--sigma", o.sigma, "Von Mises concentration")->capture_default_str();
  app.add_option("--scale-min", o.scale_min, "Smallest Gabor atom scale (px)")->capture_default_str();
  app.add_option("--scale-max", o.scale_max, "Largest Gabor atom scale (px)")->capture_default_str();
  app.add_option("--cake-exponent", o.cake.exponent, "Cake wedge exponent p")->capture_default_str();
  app.add_option("--cake-half-width", o.cake.half_width_deg, "Cake wedge half-width (deg)")
      ->capture_default_str();
  app.add_option("--ridge-sigma", o.ridge.sigma, "Ridge perpendicular bandwidth (bins)")
      ->capture_default_str();
  app.add_option("--r-lo", o.r_lo, "Inner radius of the analysis band, fraction of Nyquist")
      ->capture_default_str();
  app.add_option("--r-hi", o.r_hi, "Outer radius of the analysis band, fraction of Nyquist")
      ->capture_default_str();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic images with ground truth");
  synth_cmd->add_option("--kind", synth.kind, "gabor, oscillation or isotropic")
      ->check(CLI::IsMember({"gabor", "oscillation", "isotropic"}))
      ->capture_default_str();
  synth_cmd->add_option("--angle", synth.angle, "Oscillation angle (deg)")->capture_default_str();
  synth_cmd->add_option("--wavelength", synth.wavelength, "Oscillation wavelength (px)")
      ->capture_default_str();
  synth_cmd->add_option("--format", synth.format, "Image format")
      ->check(CLI::IsMember({"anim", "png"}))
      ->capture_default_str();

  std::string analyze_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Angular profiles and principal orientation");
  analyze_cmd->add_option("image", analyze_path, "Input image (ANIM or PNG)")->required();

  std::string reg1, reg2;
  auto* register_cmd = app.add_subcommand("register", "Estimate the rotation between two images");
  register_cmd->add_option("image1", reg1)->required();
  register_cmd->add_option("image2", reg2)->required();

  std::string rot_in, rot_out;
  double rot_angle = 0.0;
  auto* rotate_cmd = app.add_subcommand("rotate", "Bilinear rotation about the image center");
  rotate_cmd->add_option("input", rot_in)->required();
  rotate_cmd->add_option("output", rot_out, "Output path (.png or ANIM otherwise)")->required();
  rotate_cmd->add_option("--angle", rot_angle, "Angle in [0, 360) degrees")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark tables");
  bench_cmd->add_option("--suite", bench.suite, "table1 or register")
      ->check(CLI::IsMember({"table1", "register"}))
      ->capture_default_str();
  bench_cmd->add_option("--pair", bench.pair, "Two images for the register suite")->expected(2);
  bench_cmd->add_option("--sigmas", bench.sigmas, "Concentrations for table1")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--pairs", bench.pairs, "Rotated pairs for the synthetic register suite")
      ->capture_default_str();

  int mask_index = 0;
  double line_angle = -1.0;
  std::string mask_out = "mask.png";
  auto* mask_cmd = app.add_subcommand("export-mask", "Write one filter mask as a PNG");
  mask_cmd->add_option("--index", mask_index, "Angle index m")->capture_default_str();
  mask_cmd->add_option("--line", line_angle, "Rasterized line mask at this angle instead");
  mask_cmd->add_option("-o,--output", mask_out, "Output PNG")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*synth_cmd) return cmd_synth(o, synth);
    if (*analyze_cmd) return cmd_analyze(o, analyze_path);
    if (*register_cmd) return cmd_register(o, reg1, reg2);
    if (*rotate_cmd) return cmd_rotate(rot_in, rot_out, rot_angle);
    if (*bench_cmd) return cmd_bench(o, bench);
    if (*mask_cmd) return cmd_export_mask(o, mask_index, line_angle, mask_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DegenerateProfileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
