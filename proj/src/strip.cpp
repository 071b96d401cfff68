#include "expsum/strip.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

#include "expsum/kernels.hpp"
#include "expsum/parallel.hpp"
#include "numeric_util.hpp"

namespace expsum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBisectTol = 1e-12;

// Tangential dominance peaks (margin maximum equal to zero) show up under
// rounding as slivers of width about sqrt(eps), a hundred times wider than
// the nominal discard width. The cut sits above that noise scale and below
// the combined search pad and edge-perturbation excursions of the
// neighbouring strips, so genuine regions never overlap the padded windows.
inline double sliver_width(double lo, double hi) {
  return 4e-6 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
}

// Root of m_k between lo (margin mlo) and hi (margin mhi), opposite signs.
double bisect_margin_zero(const ExpSum& f, int k, double lo, double hi, double mlo) {
  for (int it = 0; it < 200 && (hi - lo) > kBisectTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double mm = dominance_margin(f, k, mid);
    if ((mm > 0.0) == (mlo > 0.0)) {
      lo = mid;
      mlo = mm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}
}  // namespace

double dominance_margin(const ExpSum& f, int k, double x) {
  if (k < 0 || k >= static_cast<int>(f.size()))
    throw Error(ErrorKind::invalid_input, "term index out of range");
  const auto& terms = f.terms();
  const int count = static_cast<int>(terms.size());
  const double ek = terms[static_cast<std::size_t>(k)].freq * x + f.log_abs_coeff(k);

  double peak = -kInf;
  for (int j = 0; j < count; ++j) {
    if (j == k) continue;
    peak = std::max(peak, terms[static_cast<std::size_t>(j)].freq * x + f.log_abs_coeff(j));
  }
  if (peak == -kInf) return kInf;  // no competitors

  double s = 0.0;
  for (int j = 0; j < count; ++j) {
    if (j == k) continue;
    s += std::exp(terms[static_cast<std::size_t>(j)].freq * x + f.log_abs_coeff(j) - peak);
  }
  return ek - (peak + std::log(s));
}

std::pair<double, double> dominance_search_bracket(const ExpSum& f) {
  const int count = static_cast<int>(f.size());
  const int last = count - 1;
  const double slack = std::log(static_cast<double>(count));
  double xl = kInf, xr = -kInf;
  for (int j = 1; j < count; ++j) {
    // term 0 beats term j by a factor count once x drops below this
    xl = std::min(xl, (f.log_abs_coeff(0) - f.log_abs_coeff(j) - slack) /
                          (f.freq(j) - f.freq(0)));
  }
  for (int j = 0; j < last; ++j) {
    xr = std::max(xr, (f.log_abs_coeff(j) - f.log_abs_coeff(last) + slack) /
                          (f.freq(last) - f.freq(j)));
  }
  return {xl - 1.0, xr + 1.0};
}

std::vector<std::pair<double, double>> dominance_intervals(const ExpSum& f, int k) {
  if (k < 0 || k >= static_cast<int>(f.size()))
    throw Error(ErrorKind::invalid_input, "term index out of range");
  const int last = static_cast<int>(f.size()) - 1;
  if (last == 0) return {{-kInf, kInf}};

  auto [xl, xr] = dominance_search_bracket(f);
  const auto margin = [&](double x) { return dominance_margin(f, k, x); };

  // m_k is concave (affine minus a log-sum-exp of affine functions), so the
  // positive set is a single interval located from its maximum.
  double peak_x;
  if (k == 0) {
    int guard = 0;
    while (margin(xl) <= 0.0 && guard++ < 8) xl -= std::max(1.0, xr - xl);
    peak_x = xl;
  } else if (k == last) {
    int guard = 0;
    while (margin(xr) <= 0.0 && guard++ < 8) xr += std::max(1.0, xr - xl);
    peak_x = xr;
  } else {
    peak_x = detail::golden_max(margin, xl, xr, 1e-10);
  }
  const double peak_val = margin(peak_x);
  if (!(peak_val > 0.0)) return {};

  double lo, hi;
  if (k == 0)
    lo = -kInf;
  else
    lo = bisect_margin_zero(f, k, xl, peak_x, margin(xl));
  if (k == last)
    hi = kInf;
  else
    hi = bisect_margin_zero(f, k, peak_x, xr, peak_val);

  if (std::isfinite(lo) && std::isfinite(hi) && hi - lo < sliver_width(lo, hi)) return {};
  return {{lo, hi}};
}

StripDecomposition decompose(const ExpSum& f) {
  if (!f.normalized())
    throw Error(ErrorKind::invalid_input, "decomposition requires the normalized form");
  const int count = static_cast<int>(f.size());

  std::vector<std::vector<std::pair<double, double>>> per_k(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (int k = 0; k < count; ++k)
    per_k[static_cast<std::size_t>(k)] = dominance_intervals(f, k);

  struct Band {
    double lo, hi;
    int k;
  };
  std::vector<Band> bands;
  for (int k = 0; k < count; ++k)
    for (const auto& [lo, hi] : per_k[static_cast<std::size_t>(k)])
      bands.push_back({lo, hi, k});
  std::sort(bands.begin(), bands.end(),
            [](const Band& a, const Band& b) { return a.lo < b.lo; });

  StripDecomposition dec;
  dec.regions.reserve(bands.size());
  for (const auto& b : bands) dec.regions.push_back({b.lo, b.hi, b.k});

  assert(!dec.regions.empty());
  assert(dec.regions.front().dominant == 0);
  assert(dec.regions.back().dominant == count - 1);

  for (std::size_t i = 0; i + 1 < dec.regions.size(); ++i) {
    double a = dec.regions[i].x_hi;
    double b = dec.regions[i + 1].x_lo;
    if (b < a) {  // independent bisections may cross by ~1e-12; collapse
      const double mid = 0.5 * (a + b);
      a = b = mid;
      dec.regions[i].x_hi = mid;
      dec.regions[i + 1].x_lo = mid;
    }
    dec.strips.push_back({a, b, dec.regions[i].dominant, dec.regions[i + 1].dominant,
                          static_cast<int>(i)});
  }
  return dec;
}

TheoremAResult theorem_a_check(const ExpSum& f, double sigma0, double sigma1) {
  if (!f.normalized())
    throw Error(ErrorKind::invalid_input, "theorem-A check requires the normalized form");
  if (!(sigma0 < sigma1))
    throw Error(ErrorKind::invalid_input, "sigma interval is empty");

  const int count = static_cast<int>(f.size());
  const double viol_tol = 1e-12;
  // every margin has |d m_k / dx| bounded by the largest frequency
  const double lip = f.max_freq() + 1.0;

  const auto worst_margin = [&](double x, int* which) {
    double best = -kInf;
    int bk = 0;
    for (int k = 0; k < count; ++k) {
      const double m = dominance_margin(f, k, x);
      if (m > best) {
        best = m;
        bk = k;
      }
    }
    if (which) *which = bk;
    return best;
  };

  // initial uniform grid, then certificate-driven refinement near potential
  // sign changes, down to a 1e-9 step
  const int grid = 257;
  std::vector<double> xs(grid), phi(grid);
  for (int i = 0; i < grid; ++i)
    xs[static_cast<std::size_t>(i)] =
        sigma0 + (sigma1 - sigma0) * static_cast<double>(i) / (grid - 1);
  {
    const std::int64_t n = grid;
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (std::int64_t i = 0; i < n; ++i)
      phi[static_cast<std::size_t>(i)] = worst_margin(xs[static_cast<std::size_t>(i)], nullptr);
  }
  for (int i = 0; i < grid; ++i) {
    if (phi[static_cast<std::size_t>(i)] > viol_tol) {
      int k = 0;
      worst_margin(xs[static_cast<std::size_t>(i)], &k);
      return {false, xs[static_cast<std::size_t>(i)], k};
    }
  }

  struct Seg {
    double a, b, fa, fb;
  };
  std::vector<Seg> stack;
  stack.reserve(1024);
  for (int i = grid - 2; i >= 0; --i)
    stack.push_back({xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i + 1)],
                     phi[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(i + 1)]});

  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    const double h = s.b - s.a;
    // a positive excursion inside needs the endpoint margins within lip*h/2 of zero
    if (std::max(s.fa, s.fb) <= -0.5 * lip * h) continue;
    if (h <= 1e-9) continue;
    const double mid = 0.5 * (s.a + s.b);
    int k = 0;
    const double fm = worst_margin(mid, &k);
    if (fm > viol_tol) return {false, mid, k};
    stack.push_back({mid, s.b, fm, s.fb});  // right after left
    stack.push_back({s.a, mid, s.fa, fm});
  }
  return {true, 0.0, -1};
}

}  // namespace expsum
