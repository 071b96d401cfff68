// Command-line front end: problem ingestion, analysis subcommands and
// JSON/CSV/SVG report emission.
//
// Exit codes: 0 success, 2 input or parameter problem, 3 a verification
// invariant failed (the failing record is printed), 4 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expsum/density.hpp"
#include "expsum/io.hpp"
#include "expsum/strip.hpp"
#include "expsum/winding.hpp"
#include "expsum/zeros.hpp"

namespace {

namespace fs = std::filesystem;
using expsum::Complex;
using Json = expsum::io::Json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RunConfig {
  std::string problem_path;
  std::string output_dir = ".";
  std::optional<double> y_lo;
  std::optional<double> y_hi;
  std::vector<double> r_grid;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
  bool svg = false;
};

int exit_code_for(const expsum::Error& e) {
  switch (e.kind()) {
    case expsum::ErrorKind::invalid_input:
    case expsum::ErrorKind::degenerate_sum:
    case expsum::ErrorKind::invalid_radius:
      return 2;
    default:
      return 4;
  }
}

struct Problem {
  expsum::ExpSum raw;
  expsum::NormalizeResult norm;
};

Problem load(const RunConfig& cfg) {
  expsum::ExpSum raw = expsum::io::load_problem(cfg.problem_path);
  auto norm = expsum::normalize(raw);
  return {std::move(raw), std::move(norm)};
}

std::pair<double, double> window_or_default(const RunConfig& cfg) {
  const double lo = cfg.y_lo.value_or(0.0);
  const double hi = cfg.y_hi.value_or(kTwoPi);
  if (!(lo < hi)) throw expsum::Error(expsum::ErrorKind::invalid_input, "need y_lo < y_hi");
  return {lo, hi};
}

// Geometric grid over [10, 2000] with a small seeded jitter so the samples do
// not resonate with the zero lattice.
std::vector<double> default_r_grid(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  std::vector<double> grid;
  const int n = 24;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    double r = 10.0 * std::pow(200.0, t) * (1.0 + jitter(rng));
    r = std::max(r, prev + 0.5);
    grid.push_back(r);
    prev = r;
  }
  return grid;
}

void write_out(const RunConfig& cfg, const std::string& name, const std::string& content) {
  fs::create_directories(cfg.output_dir);
  const fs::path p = fs::path(cfg.output_dir) / name;
  expsum::io::write_text_file(p, content);
  std::cout << "wrote " << p.string() << "\n";
}

int cmd_analyze(const RunConfig& cfg) {
  const Problem prob = load(cfg);
  const auto dec = expsum::decompose(prob.norm.sum);
  write_out(cfg, "decomposition.json", expsum::io::decomposition_to_json(dec).dump(2) + "\n");
  if (cfg.svg) write_out(cfg, "strips.svg", expsum::io::strip_diagram_svg(dec));
  std::cout << "regions: " << dec.regions.size() << ", strips: " << dec.strips.size() << "\n";
  return 0;
}

int cmd_count(const RunConfig& cfg) {
  const Problem prob = load(cfg);
  const auto dec = expsum::decompose(prob.norm.sum);
  const auto [y_lo, y_hi] = window_or_default(cfg);
  const double pad_l = expsum::strip_search_pad(dec.strips.front());
  const double pad_r = expsum::strip_search_pad(dec.strips.back());
  const expsum::Rectangle rect{dec.strips.front().x_lo - pad_l,
                               dec.strips.back().x_hi + pad_r, y_lo, y_hi};
  const auto res = expsum::count_zeros(prob.norm.sum, rect);
  Json j;
  j["window"] = {{"y_lo", y_lo}, {"y_hi", y_hi}};
  j["x_span"] = {{"x_lo", rect.x_lo}, {"x_hi", rect.x_hi}};
  j["count"] = res.count;
  j["perturbations_applied"] = res.perturbations_applied;
  j["segments_evaluated"] = res.segments_evaluated;
  j["min_boundary_logmod"] = res.min_boundary_logmod;
  write_out(cfg, "count.json", j.dump(2) + "\n");
  std::cout << "count: " << res.count << "\n";
  return 0;
}

int cmd_zeros(const RunConfig& cfg) {
  const Problem prob = load(cfg);
  const auto dec = expsum::decompose(prob.norm.sum);
  const auto [y_lo, y_hi] = window_or_default(cfg);
  const auto zeros = expsum::find_zeros(prob.norm.sum, dec, y_lo, y_hi);
  write_out(cfg, "zeros.csv", expsum::io::zeros_to_csv(zeros));
  if (cfg.json) write_out(cfg, "zeros.json", expsum::io::zeros_to_json(zeros).dump(2) + "\n");
  if (cfg.svg)
    write_out(cfg, "zeros.svg", expsum::io::strip_diagram_svg(dec, zeros, y_lo, y_hi));
  std::cout << "zeros found: " << zeros.size() << "\n";
  return 0;
}

// Least-squares slope of count against r, restricted to the larger radii
// where the asymptotic line dominates the O(1) wobble.
std::optional<double> fitted_slope(const std::vector<expsum::DensitySample>& samples,
                                   double slope_expected) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples)
    if (s.r >= 100.0) pts.emplace_back(s.r, slope_expected * s.r + s.deviation);
  if (pts.size() < 4) {
    pts.clear();
    for (const auto& s : samples) pts.emplace_back(s.r, slope_expected * s.r + s.deviation);
  }
  if (pts.size() < 2) return std::nullopt;
  double sr = 0, sc = 0, srr = 0, src = 0;
  for (const auto& [r, c] : pts) {
    sr += r;
    sc += c;
    srr += r * r;
    src += r * c;
  }
  const double n = static_cast<double>(pts.size());
  const double den = n * srr - sr * sr;
  if (den == 0.0) return std::nullopt;
  return (n * src - sr * sc) / den;
}

int cmd_density(const RunConfig& cfg) {
  const Problem prob = load(cfg);
  const auto& f = prob.norm.sum;
  const auto dec = expsum::decompose(f);
  const double y0 = cfg.y_lo.value_or(0.0);
  const std::vector<double> grid = cfg.r_grid.empty() ? default_r_grid(cfg.seed) : cfg.r_grid;

  const auto langer = expsum::langer_check(f, dec, grid, y0);
  std::vector<expsum::DensityReport> reports;
  for (int s = 0; s < static_cast<int>(dec.strips.size()); ++s) {
    auto rep = expsum::strip_density(f, dec, s, grid, y0);
    rep.langer_max_deviation = langer.max_deviation;
    reports.push_back(std::move(rep));
  }

  write_out(cfg, "density.json", expsum::io::density_to_json(reports, langer).dump(2) + "\n");
  if (cfg.csv)
    for (const auto& rep : reports)
      write_out(cfg, "density_strip" + std::to_string(rep.strip_index) + ".csv",
                expsum::io::density_to_csv(rep));

  int rc = 0;
  if (!langer.pass) {
    std::cout << "INVARIANT FAIL langer: max deviation " << langer.max_deviation
              << " exceeds n = " << f.order() << "\n";
    rc = 3;
  }
  for (const auto& rep : reports) {
    const auto slope = fitted_slope(rep.samples, rep.slope_expected);
    if (slope && rep.slope_expected > 0.0 &&
        std::abs(*slope - rep.slope_expected) > 0.02 * rep.slope_expected) {
      std::cout << "INVARIANT FAIL strip " << rep.strip_index << ": fitted slope " << *slope
                << " vs expected " << rep.slope_expected << "\n";
      rc = 3;
    }
  }
  std::cout << "langer max deviation: " << langer.max_deviation << " (n = " << f.order()
            << ")\n";
  return rc;
}

int cmd_backlund(const RunConfig& cfg, double z1_re, double z1_im, double z2_re,
                 double z2_im, double radius) {
  const Problem prob = load(cfg);
  const auto b = expsum::backlund_bound(prob.norm.sum, Complex(z1_re, z1_im),
                                        Complex(z2_re, z2_im), radius);
  write_out(cfg, "backlund.json", expsum::io::backlund_to_json(b).dump(2) + "\n");
  std::cout << "lhs: " << b.lhs << ", bound: " << b.bound << "\n";
  if (!(b.lhs <= b.bound + 1e-9)) {
    std::cout << "INVARIANT FAIL backlund: lhs exceeds bound\n";
    return 3;
  }
  return 0;
}

int cmd_disc(const RunConfig& cfg, double horizon, int line_samples, double cutoff) {
  const Problem prob = load(cfg);
  const auto dec = expsum::decompose(prob.norm.sum);
  const auto d = expsum::disc_experiment(prob.norm.sum, dec, horizon, line_samples, cutoff);
  write_out(cfg, "disc.json", expsum::io::disc_to_json(d).dump(2) + "\n");
  std::cout << "zeros: " << d.zero_count << ", radii sum: " << d.radii_partial_sum
            << ", tail bound: " << d.analytic_tail_bound << "\n";
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  int rc = cmd_analyze(cfg);
  if (rc == 0) rc = cmd_zeros(cfg);
  const int density_rc = cmd_density(cfg);
  return rc != 0 ? rc : density_rc;
}

int cmd_validate(const std::string& input) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "error: cannot open " << input << "\n";
    return 2;
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "error: not valid JSON: " << e.what() << "\n";
    return 2;
  }
  const std::string problem = expsum::io::validate_decomposition_json(j);
  if (!problem.empty()) {
    std::cerr << "invalid decomposition: " << problem << "\n";
    return 2;
  }
  std::cout << "valid decomposition\n";
  return 0;
}

void add_common(CLI::App* app, RunConfig& cfg, bool need_problem = true) {
  auto* opt = app->add_option("--problem", cfg.problem_path, "problem JSON file");
  if (need_problem) opt->required();
  app->add_option("--out", cfg.output_dir, "output directory");
  app->add_option("--y-lo", cfg.y_lo, "window lower imaginary bound");
  app->add_option("--y-hi", cfg.y_hi, "window upper imaginary bound");
  app->add_option("--r-grid", cfg.r_grid, "comma separated r samples")->delimiter(',');
  app->add_option("--seed", cfg.seed, "seed for the default r grid jitter");
  app->add_flag("--json", cfg.json, "emit JSON where optional");
  app->add_flag("--csv", cfg.csv, "emit CSV where optional");
  app->add_flag("--svg", cfg.svg, "emit SVG diagrams");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero distribution toolkit for normalized exponential sums"};
  app.require_subcommand(1);

  RunConfig cfg;
  double z1_re = 0, z1_im = 0, z2_re = 0, z2_im = 0, radius = 0;
  double horizon = 1000.0, cutoff = 100.0;
  int line_samples = 41;
  std::string validate_input;

  auto* analyze = app.add_subcommand("analyze", "zero-free regions and critical strips");
  add_common(analyze, cfg);
  auto* count = app.add_subcommand("count", "winding-number zero count over a window");
  add_common(count, cfg);
  auto* zeros = app.add_subcommand("zeros", "locate zeros in a window");
  add_common(zeros, cfg);
  auto* density = app.add_subcommand("density", "per-strip counts against the expected line");
  add_common(density, cfg);
  auto* backlund = app.add_subcommand("backlund", "evaluate the segment bound");
  add_common(backlund, cfg);
  backlund->add_option("--z1-re", z1_re)->required();
  backlund->add_option("--z1-im", z1_im)->required();
  backlund->add_option("--z2-re", z2_re)->required();
  backlund->add_option("--z2-im", z2_im)->required();
  backlund->add_option("--radius", radius, "disc radius R > |z2-z1|")->required();
  auto* disc = app.add_subcommand("disc", "shrinking-disc line experiment");
  add_common(disc, cfg);
  disc->add_option("--horizon", horizon, "modulus horizon");
  disc->add_option("--line-samples", line_samples, "number of probed vertical lines");
  disc->add_option("--cutoff", cutoff, "tail cutoff modulus");
  auto* report = app.add_subcommand("report", "analyze + zeros + density in one run");
  add_common(report, cfg);
  auto* validate = app.add_subcommand("validate", "check a decomposition JSON document");
  validate->add_option("--input", validate_input, "decomposition JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (count->parsed()) return cmd_count(cfg);
    if (zeros->parsed()) return cmd_zeros(cfg);
    if (density->parsed()) return cmd_density(cfg);
    if (backlund->parsed()) return cmd_backlund(cfg, z1_re, z1_im, z2_re, z2_im, radius);
    if (disc->parsed()) return cmd_disc(cfg, horizon, line_samples, cutoff);
    if (report->parsed()) return cmd_report(cfg);
    if (validate->parsed()) return cmd_validate(validate_input);
  } catch (const expsum::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
