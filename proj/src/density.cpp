#include "expsum/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "expsum/winding.hpp"
#include "numeric_util.hpp"

namespace expsum {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_r_values(std::span<const double> r_values) {
  if (r_values.empty())
    throw Error(ErrorKind::invalid_input, "need at least one r value");
  double prev = 0.0;
  for (double r : r_values) {
    if (!(r > 0.0) || !(r > prev))
      throw Error(ErrorKind::invalid_input, "r values must be positive and increasing");
    prev = r;
  }
}

const CriticalStrip& strip_at(const StripDecomposition& dec, int strip_index) {
  if (strip_index < 0 || strip_index >= static_cast<int>(dec.strips.size()))
    throw Error(ErrorKind::invalid_input, "strip index out of range");
  return dec.strips[static_cast<std::size_t>(strip_index)];
}

Rectangle padded_window(const CriticalStrip& s, double y_lo, double y_hi) {
  const double pad = strip_search_pad(s);
  return {s.x_lo - pad, s.x_hi + pad, y_lo, y_hi};
}

Rectangle spanning_window(const StripDecomposition& dec, double y_lo, double y_hi) {
  const auto& first = dec.strips.front();
  const auto& last = dec.strips.back();
  return {first.x_lo - strip_search_pad(first), last.x_hi + strip_search_pad(last),
          y_lo, y_hi};
}
}  // namespace

DensityReport strip_density(const ExpSum& f, const StripDecomposition& dec,
                            int strip_index, std::span<const double> r_values, double y0) {
  check_r_values(r_values);
  const auto& s = strip_at(dec, strip_index);
  const double slope =
      std::abs(f.freq(s.left_dominant) - f.freq(s.right_dominant)) / kTwoPi;

  DensityReport rep;
  rep.strip_index = strip_index;
  rep.slope_expected = slope;
  rep.max_abs_deviation = 0.0;
  rep.langer_max_deviation = kNan;
  rep.langer_n = f.order();
  rep.samples.reserve(r_values.size());
  for (double r : r_values) {
    const long count = count_zeros(f, padded_window(s, y0, y0 + r)).count;
    const double dev = static_cast<double>(count) - slope * r;
    rep.samples.push_back({r, count, dev});
    rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(dev));
  }
  return rep;
}

LangerResult langer_check(const ExpSum& f, const StripDecomposition& dec,
                          std::span<const double> r_values, double y0) {
  check_r_values(r_values);
  if (dec.strips.empty())
    throw Error(ErrorKind::invalid_input, "decomposition has no strips");
  const double slope = f.max_freq() / kTwoPi;

  LangerResult res;
  res.max_deviation = 0.0;
  res.samples.reserve(r_values.size());
  for (double r : r_values) {
    const long count = count_zeros(f, spanning_window(dec, y0, y0 + r)).count;
    const double dev = static_cast<double>(count) - slope * r;
    res.samples.push_back({r, count, dev});
    res.max_deviation = std::max(res.max_deviation, std::abs(dev));
  }
  res.pass = res.max_deviation <= static_cast<double>(f.order()) + 1e-6;
  return res;
}

std::vector<std::pair<double, long>> unit_band_counts(
    const ExpSum& f, const StripDecomposition& dec, int strip_index,
    std::span<const double> r_values, double band, bool lower_half) {
  check_r_values(r_values);
  if (!(band > 0.0)) throw Error(ErrorKind::invalid_input, "band height must be positive");
  const auto& s = strip_at(dec, strip_index);

  std::vector<std::pair<double, long>> out;
  out.reserve(r_values.size());
  for (double r : r_values) {
    const double y_lo = lower_half ? -r - band : r;
    const double y_hi = lower_half ? -r : r + band;
    out.emplace_back(r, count_zeros(f, padded_window(s, y_lo, y_hi)).count);
  }
  return out;
}

RealPartClosure real_part_closure(const ExpSum& f, const StripDecomposition& dec,
                                  double y_horizon, int bins) {
  if (!(y_horizon > 0.0)) throw Error(ErrorKind::invalid_input, "horizon must be positive");
  if (bins < 1) throw Error(ErrorKind::invalid_input, "need at least one bin");

  std::vector<double> res;
  for (const auto& s : dec.strips)
    for (const auto& rec : find_zeros(f, s, -y_horizon, y_horizon))
      for (int c = 0; c < rec.multiplicity; ++c) res.push_back(rec.z.real());
  std::sort(res.begin(), res.end());

  RealPartClosure out;
  out.zero_count = static_cast<long>(res.size());
  out.histogram.assign(static_cast<std::size_t>(bins), 0);
  if (res.empty()) {
    out.bin_lo = out.bin_hi = out.re_min = out.re_max = kNan;
    out.max_gap = kNan;
    return out;
  }
  out.re_min = res.front();
  out.re_max = res.back();
  out.bin_lo = out.re_min;
  out.bin_hi = out.re_max;
  out.max_gap = 0.0;
  for (std::size_t i = 1; i < res.size(); ++i)
    out.max_gap = std::max(out.max_gap, res[i] - res[i - 1]);

  const double span = out.re_max - out.re_min;
  for (double x : res) {
    int b = span > 0.0
                ? static_cast<int>(static_cast<double>(bins) * (x - out.re_min) / span)
                : 0;
    b = std::clamp(b, 0, bins - 1);
    ++out.histogram[static_cast<std::size_t>(b)];
  }
  return out;
}

double disc_tail_bound(const ExpSum& f, double from_modulus) {
  if (!(from_modulus > 0.0))
    throw Error(ErrorKind::invalid_input, "tail start must be positive");
  const double wn = f.max_freq();
  const double n = static_cast<double>(f.order());

  // integrate 3 * ((wn/pi) t + n) / ((1+t)^2 log^2(e+t)) over t >= T with the
  // substitution t = e^v; the integrand then decays like 1/v^2
  const double v0 = std::log(std::max(from_modulus, 1.0));
  const double v1 = v0 + 60.0;
  const auto integrand = [&](double v) {
    const double t = std::exp(v);
    const double lg = std::log(std::numbers::e + t);
    return 3.0 * ((wn / kPi) * t + n) * t / ((1.0 + t) * (1.0 + t) * lg * lg);
  };
  const int panels = 8192;
  const double h = (v1 - v0) / panels;
  detail::Compensated acc;
  acc.add(integrand(v0));
  acc.add(integrand(v1));
  for (int i = 1; i < panels; ++i)
    acc.add((i % 2 == 1 ? 4.0 : 2.0) * integrand(v0 + h * i));
  const double simpson = acc.value() * h / 3.0;

  const double remainder = 3.0 * (wn / kPi) / v1 + 3.0 * n * std::exp(-v1);
  return simpson + remainder;
}

DiscExperiment disc_experiment(const ExpSum& f, const StripDecomposition& dec,
                               double modulus_horizon, int line_samples,
                               double cutoff_modulus) {
  if (!(modulus_horizon > 0.0))
    throw Error(ErrorKind::invalid_input, "modulus horizon must be positive");
  if (line_samples < 1)
    throw Error(ErrorKind::invalid_input, "need at least one sampled line");

  struct Disc {
    Complex z;
    double modulus;
    double radius;
  };
  std::vector<Disc> discs;
  for (const auto& s : dec.strips) {
    for (const auto& rec : find_zeros(f, s, -modulus_horizon, modulus_horizon)) {
      const double mod = std::abs(rec.z);
      if (mod > modulus_horizon) continue;
      const double lg = std::log(std::numbers::e + mod);
      const double radius = 1.0 / ((1.0 + mod) * lg * lg);
      for (int c = 0; c < rec.multiplicity; ++c) discs.push_back({rec.z, mod, radius});
    }
  }
  std::sort(discs.begin(), discs.end(), [](const Disc& a, const Disc& b) {
    if (a.modulus != b.modulus) return a.modulus < b.modulus;
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    return a.z.real() < b.z.real();
  });

  DiscExperiment out;
  out.cutoff_modulus = cutoff_modulus;
  out.zero_count = static_cast<long>(discs.size());
  detail::Compensated partial, eps_tail;
  for (const auto& d : discs) {
    partial.add(d.radius);
    if (d.modulus > cutoff_modulus) eps_tail.add(2.0 * d.radius);
  }
  out.radii_partial_sum = partial.value();
  out.measure_estimate_epsilon = eps_tail.value();
  out.analytic_tail_bound = disc_tail_bound(f, modulus_horizon);

  const double span_lo = dec.strips.front().x_lo;
  const double span_hi = dec.strips.back().x_hi;
  out.lines_tested = line_samples;
  out.lines_hitting_infinitely = 0;
  out.lines.reserve(static_cast<std::size_t>(line_samples));
  const double tail_start = modulus_horizon / 10.0;
  for (int i = 0; i < line_samples; ++i) {
    const double c = span_lo + (span_hi - span_lo) *
                                   (static_cast<double>(i) + 0.5) /
                                   static_cast<double>(line_samples);
    DiscLine line{c, 0, 0};
    bool tail_hit = false;
    for (const auto& d : discs) {
      if (std::abs(c - d.z.real()) < d.radius) {
        ++line.discs_met;
        if (d.modulus > cutoff_modulus) ++line.discs_met_beyond_cutoff;
        if (d.modulus > tail_start) tail_hit = true;
      }
    }
    if (tail_hit) ++out.lines_hitting_infinitely;
    out.lines.push_back(line);
  }
  return out;
}

}  // namespace expsum
