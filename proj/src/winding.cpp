#include "expsum/winding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <vector>

#include "expsum/kernels.hpp"
#include "numeric_util.hpp"

namespace expsum {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogZeroBasin = std::log(1e-12);  // relative modulus treated as "on a zero"
constexpr long kTraceBudget = 1L << 26;
constexpr int kMaxPerturbations = 32;

struct Trace {
  double total = 0.0;
  double min_rel = kInf;
  double min_abs = kInf;
  long samples = 0;
  bool zero_hit = false;
  Complex zero_where{0.0, 0.0};
};

// Unwrapped phase variation along a -> b. Samples start dense enough for the
// dominant-term rotation rate and are refined until neighbouring phases agree
// to max_step. A sample inside the zero basin aborts the trace.
//
// Gaps whose endpoints show a modulus dip are refined too, down to a width
// comparable with |f/f'| there. A zero of multiplicity m at distance d from
// the path swings the phase by about m*pi over a window of width ~2d; for
// even m the wrapped endpoint difference looks harmless, so the step
// criterion alone can skip a whole 2*pi turn. |f/f'| equals d/m near the
// zero, which makes it the right refinement scale: the swing gets sampled,
// and a zero effectively on the path walks a sample into the zero basin so
// the collision is reported instead of miscounted.
Trace trace_phase(const ExpSum& f, Complex a, Complex b, double max_step, long budget) {
  Trace tr;
  if (a == b) return tr;
  const Complex dir = b - a;
  const double len = std::abs(dir);
  const double kDipLog = std::log(0.05);

  long k0 = static_cast<long>(std::llround(f.max_freq() * len / (0.5 * max_step))) + 9;
  k0 = std::clamp(k0, 9L, 65537L);

  std::vector<double> ts(static_cast<std::size_t>(k0));
  for (long i = 0; i < k0; ++i)
    ts[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(k0 - 1);

  std::vector<ScaledTraceEval> vals(ts.size());
  std::vector<Complex> pts(ts.size());

  const auto eval_range = [&](const std::vector<double>& tt,
                              std::vector<ScaledTraceEval>& vv) {
    pts.resize(tt.size());
    for (std::size_t i = 0; i < tt.size(); ++i) pts[i] = a + tt[i] * dir;
    vv.resize(tt.size());
    kernels::trace_eval_batch(f, pts, vv);
    tr.samples += static_cast<long>(tt.size());
  };
  const auto scan_zero = [&](const std::vector<double>& tt,
                             const std::vector<ScaledTraceEval>& vv) {
    for (std::size_t i = 0; i < tt.size(); ++i) {
      tr.min_rel = std::min(tr.min_rel, vv[i].rel_logmod);
      tr.min_abs = std::min(tr.min_abs, vv[i].logmod);
      if (vv[i].rel_logmod < kLogZeroBasin && !tr.zero_hit) {
        tr.zero_hit = true;
        tr.zero_where = a + tt[i] * dir;
      }
    }
  };

  eval_range(ts, vals);
  scan_zero(ts, vals);
  if (tr.zero_hit) return tr;

  std::vector<double> new_ts;
  std::vector<ScaledTraceEval> new_vals;
  while (true) {
    new_ts.clear();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double gap = ts[i + 1] - ts[i];
      if (gap < 1e-15) continue;  // below representable subdivision
      const bool rough =
          std::abs(wrap_phase(vals[i + 1].phase - vals[i].phase)) >= max_step;
      const double rel_min = std::min(vals[i].rel_logmod, vals[i + 1].rel_logmod);
      const bool dip =
          rel_min < kDipLog &&
          gap * len > 0.5 * std::min(vals[i].zero_distance, vals[i + 1].zero_distance);
      if (rough || dip) new_ts.push_back(ts[i] + 0.5 * gap);
    }
    if (new_ts.empty()) break;
    if (static_cast<long>(ts.size() + new_ts.size()) > budget)
      throw Error(ErrorKind::no_convergence, "phase unwrapping exceeded the subdivision budget");

    eval_range(new_ts, new_vals);
    scan_zero(new_ts, new_vals);
    if (tr.zero_hit) return tr;

    // merge sorted
    std::vector<double> mts(ts.size() + new_ts.size());
    std::vector<ScaledTraceEval> mvals(mts.size());
    std::size_t i = 0, j = 0, o = 0;
    while (i < ts.size() || j < new_ts.size()) {
      if (j >= new_ts.size() || (i < ts.size() && ts[i] <= new_ts[j])) {
        mts[o] = ts[i];
        mvals[o] = vals[i];
        ++i;
      } else {
        mts[o] = new_ts[j];
        mvals[o] = new_vals[j];
        ++j;
      }
      ++o;
    }
    ts.swap(mts);
    vals.swap(mvals);
  }

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    total += wrap_phase(vals[i + 1].phase - vals[i].phase);
  tr.total = total;
  return tr;
}

std::uint64_t hash_rect(const Rectangle& r) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  const double vals[4] = {r.x_lo, r.x_hi, r.y_lo, r.y_hi};
  for (double v : vals) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    h = detail::splitmix64(h ^ bits);
  }
  return h;
}

// Slide distance for a colliding edge. Every edge moves toward smaller
// coordinates, which realizes half-open [lo, hi) attribution on both axes.
double edge_delta(std::uint64_t base, int edge, int attempt, double anchor, double cap) {
  const std::uint64_t h = detail::splitmix64(
      base ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(edge + 1)) ^
      (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(attempt + 1)));
  const double u = 1.0 + detail::hash_unit(h);  // in (1, 2)
  double d = 1e-7 * (1.0 + std::abs(anchor)) * u;
  if (d > cap) d = cap * (0.25 + 0.5 * (u - 1.0));
  return d;
}

}  // namespace

double phase_change(const ExpSum& f, Complex a, Complex b) {
  const Trace tr = trace_phase(f, a, b, kPi / 2.0, kTraceBudget);
  if (tr.zero_hit)
    throw Error(ErrorKind::zero_on_path, "zero on integration path", tr.zero_where);
  return tr.total;
}

WindingResult count_zeros(const ExpSum& f, const Rectangle& rect) {
  if (!(rect.x_lo < rect.x_hi) || !(rect.y_lo < rect.y_hi) ||
      !std::isfinite(rect.x_lo) || !std::isfinite(rect.x_hi) ||
      !std::isfinite(rect.y_lo) || !std::isfinite(rect.y_hi))
    throw Error(ErrorKind::invalid_input,
                "rectangle must be finite and non-degenerate, got [" +
                    std::to_string(rect.x_lo) + ", " + std::to_string(rect.x_hi) +
                    "] x [" + std::to_string(rect.y_lo) + ", " +
                    std::to_string(rect.y_hi) + "]");

  const std::uint64_t base = hash_rect(rect);
  const double cap_y = 0.25 * (rect.y_hi - rect.y_lo);
  const double cap_x = 0.25 * (rect.x_hi - rect.x_lo);
  bool moved[4] = {false, false, false, false};  // bottom, right, top, left
  int perturbations = 0;

  for (int attempt = 0; attempt <= kMaxPerturbations; ++attempt) {
    double xl = rect.x_lo, xh = rect.x_hi, yl = rect.y_lo, yh = rect.y_hi;
    if (moved[0]) yl -= edge_delta(base, 0, attempt, rect.y_lo, cap_y);
    if (moved[1]) xh -= edge_delta(base, 1, attempt, rect.x_hi, cap_x);
    if (moved[2]) yh -= edge_delta(base, 2, attempt, rect.y_hi, cap_y);
    if (moved[3]) xl -= edge_delta(base, 3, attempt, rect.x_lo, cap_x);

    const Complex bl(xl, yl), br(xh, yl), tr_(xh, yh), tl(xl, yh);
    const Complex edges[4][2] = {{bl, br}, {br, tr_}, {tr_, tl}, {tl, bl}};

    bool collided = false;
    int bad_edge = -1;
    for (int pass = 0; pass < 2 && !collided; ++pass) {
      const double step = pass == 0 ? kPi / 2.0 : kPi / 4.0;
      double total = 0.0, min_abs = kInf;
      long samples = 0;
      collided = false;
      for (int e = 0; e < 4; ++e) {
        const Trace t = trace_phase(f, edges[e][0], edges[e][1], step, kTraceBudget);
        if (t.zero_hit) {
          collided = true;
          bad_edge = e;
          break;
        }
        total += t.total;
        min_abs = std::min(min_abs, t.min_abs);
        samples += t.samples;
      }
      if (collided) break;

      const double q = total / kTwoPi;
      const long m = std::llround(q);
      if (std::abs(q - static_cast<double>(m)) <= 1e-6 && m >= 0)
        return {static_cast<int>(m), min_abs, perturbations, samples};
      if (pass == 1) {
        // winding refuses to settle on an integer: some zero is effectively
        // on the contour, slide all edges
        collided = true;
        bad_edge = -1;
      }
    }

    if (bad_edge >= 0)
      moved[bad_edge] = true;
    else
      moved[0] = moved[1] = moved[2] = moved[3] = true;
    ++perturbations;
  }
  throw Error(ErrorKind::perturbation_exhausted,
              "persistent zero collisions on the contour",
              Complex(rect.x_lo, rect.y_lo));
}

BacklundBound backlund_bound(const ExpSum& f, Complex z1, Complex z2, double disc_radius) {
  const double t_len = std::abs(z2 - z1);
  if (!(t_len > 0.0) || !(disc_radius > t_len))
    throw Error(ErrorKind::invalid_radius, "disc radius must exceed the segment length");

  const ScaledEval v1 = eval_scaled_full(f, z1);
  if (v1.rel_logmod < kLogZeroBasin)
    throw Error(ErrorKind::zero_at_anchor, "segment anchor is numerically a zero", z1);

  constexpr int kCircle = 4096;
  std::vector<double> thetas(kCircle), mods(kCircle);
  for (int i = 0; i < kCircle; ++i)
    thetas[static_cast<std::size_t>(i)] = kTwoPi * static_cast<double>(i) / kCircle;
  kernels::circle_logmod(f, z1, disc_radius, thetas, mods);

  int best = 0;
  for (int i = 1; i < kCircle; ++i)
    if (mods[static_cast<std::size_t>(i)] > mods[static_cast<std::size_t>(best)]) best = i;

  const auto ring = [&](double th) {
    return eval_scaled_full(f, z1 + disc_radius * Complex(std::cos(th), std::sin(th))).logmod;
  };
  const double h = kTwoPi / kCircle;
  const double refined_at = detail::golden_max(
      ring, thetas[static_cast<std::size_t>(best)] - h,
      thetas[static_cast<std::size_t>(best)] + h, 1e-12);
  const double peak = std::max(mods[static_cast<std::size_t>(best)], ring(refined_at));

  const double lhs = std::abs(phase_change(f, z1, z2)) / kTwoPi;
  const double bound = (peak - v1.logmod) / (2.0 * std::log(disc_radius / t_len)) + 0.5;
  return {z1, z2, disc_radius, t_len, bound, lhs};
}

}  // namespace expsum
