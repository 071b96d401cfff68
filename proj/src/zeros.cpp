#include "expsum/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "numeric_util.hpp"

namespace expsum {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinBoxDiameter = 1e-8;
constexpr double kNewtonStepTol = 1e-12;
const double kResidualRelLog = std::log(1e-9);

struct Box {
  double xl, xh, yl, yh;
  double width() const { return xh - xl; }
  double height() const { return yh - yl; }
  double diameter() const { return std::hypot(width(), height()); }
  Complex center() const { return {0.5 * (xl + xh), 0.5 * (yl + yh)}; }
  Rectangle rect() const { return {xl, xh, yl, yh}; }
};

std::uint64_t box_hash(const Box& b) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (double v : {b.xl, b.xh, b.yl, b.yh}) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    h = detail::splitmix64(h ^ bits);
  }
  return h;
}

int box_count(const ExpSum& f, const Box& b) { return count_zeros(f, b.rect()).count; }

bool residual_ok(const ExpSum& f, Complex z) {
  return relative_logmod(f, z) <= kResidualRelLog;
}

// Newton iteration z <- z - mult / (f'/f). For a zero of the given
// multiplicity the step is asymptotically exact. Near a multiple zero the
// evaluated residual bottoms out at rounding noise before the step drops to
// the formal tolerance and the iteration starts bouncing off the noise floor,
// so the best-residual iterate is kept and accepted when it qualifies as a
// zero. Returns nothing on divergence or escape.
std::optional<Complex> newton_polish(const ExpSum& f, Complex z0, double escape, int mult) {
  Complex z = z0;
  Complex best = z0;
  double best_rel = relative_logmod(f, z0);
  double prev = kInf;
  int growing = 0;
  for (int it = 0; it < 50; ++it) {
    Complex ld;
    try {
      ld = eval_logderiv(f, z);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::near_zero_divide) return z;  // landed on the zero
      throw;
    }
    const Complex step = -static_cast<double>(mult) / ld;
    const double s = std::abs(step);
    if (!std::isfinite(s)) break;
    z += step;
    if (std::abs(z - z0) > escape) break;
    const double rel = relative_logmod(f, z);
    if (rel < best_rel) {
      best_rel = rel;
      best = z;
    }
    if (s < kNewtonStepTol) return z;
    if (s > prev) {
      if (++growing >= 3) break;
    } else {
      growing = 0;
    }
    prev = s;
  }
  if (best_rel <= kResidualRelLog) return best;
  return std::nullopt;
}

ZeroRecord make_record(const ExpSum& f, Complex z, int mult, int strip_index, ZeroMethod m) {
  return {z, mult, strip_index, eval_scaled_full(f, z).logmod, m};
}

// k-th derivative of the sum, itself an exponential sum (the constant term
// drops out). Empty when nothing is left.
std::optional<ExpSum> derivative_sum(const ExpSum& f, int order) {
  std::vector<ExpTerm> terms;
  for (const auto& t : f.terms()) {
    if (t.freq == 0.0) continue;
    terms.push_back({t.coeff * std::pow(t.freq, order), t.freq});
  }
  if (terms.empty()) return std::nullopt;
  return ExpSum(std::move(terms));
}

// Terminal cluster: a box that winding cannot split further while still
// holding mult zeros. Multiplicity-aware Newton gets near an honest multiple
// zero but bounces off the rounding-noise floor of f; an m-fold zero of f is
// a simple zero of f^(m-1), so a derivative polish pins it down sharply.
void emit_cluster(const ExpSum& f, const Box& box, int mult, int strip_index,
                  std::vector<ZeroRecord>& out) {
  const Complex c = box.center();
  Complex seed = c;
  bool seed_ok = false;
  if (auto z = newton_polish(f, c, 2.0 * box.diameter() + 1e-3, mult);
      z && residual_ok(f, *z)) {
    seed = *z;
    seed_ok = true;
  }
  if (mult >= 2) {
    if (const auto g = derivative_sum(f, mult - 1)) {
      const double leash = 2.0 * box.diameter() + 1e-4;
      if (auto z = newton_polish(*g, seed, leash, 1);
          z && residual_ok(f, *z) && std::abs(*z - seed) <= leash) {
        out.push_back(make_record(f, *z, mult, strip_index, ZeroMethod::box_limit));
        return;
      }
    }
  }
  out.push_back(make_record(f, seed_ok ? seed : c, mult, strip_index, ZeroMethod::box_limit));
}

// Split at a hash-jittered fraction of the longer-biased axis. The jitter
// keeps split lines from systematically landing on zeros (symmetric sums put
// zeros exactly at midpoints).
void split_box(const Box& b, int depth, Box& lo, Box& hi) {
  bool split_x = depth % 2 == 0;
  if (b.width() < 0.1 * b.height()) split_x = false;
  if (b.height() < 0.1 * b.width()) split_x = true;
  if (split_x && b.width() < 4e-8 && b.height() >= 4e-8) split_x = false;
  if (!split_x && b.height() < 4e-8 && b.width() >= 4e-8) split_x = true;
  const double frac =
      0.4 + 0.2 * detail::hash_unit(detail::splitmix64(
                      box_hash(b) ^ static_cast<std::uint64_t>(depth + 1)));
  if (split_x) {
    double mid = b.xl + frac * b.width();
    if (!(mid > b.xl && mid < b.xh)) mid = 0.5 * (b.xl + b.xh);
    lo = {b.xl, mid, b.yl, b.yh};
    hi = {mid, b.xh, b.yl, b.yh};
  } else {
    double mid = b.yl + frac * b.height();
    if (!(mid > b.yl && mid < b.yh)) mid = 0.5 * (b.yl + b.yh);
    lo = {b.xl, b.xh, b.yl, mid};
    hi = {b.xl, b.xh, mid, b.yh};
  }
}

bool splittable(const Box& b) {
  const double scale_x = 1.0 + std::max(std::abs(b.xl), std::abs(b.xh));
  const double scale_y = 1.0 + std::max(std::abs(b.yl), std::abs(b.yh));
  return b.width() > 1e-13 * scale_x || b.height() > 1e-13 * scale_y;
}

// A count-1 box. Winding bisection first: Newton is launched only once the
// box is small enough that it cannot wander off to a neighbouring zero, so
// the record provably belongs to this box.
void emit_simple(const ExpSum& f, Box box, int strip_index, std::vector<ZeroRecord>& out) {
  int depth = 0;
  try {
    while (box.diameter() > 1e-2 && splittable(box)) {
      Box lo, hi;
      split_box(box, depth++, lo, hi);
      box = box_count(f, lo) == 1 ? lo : hi;
    }
    while (box.diameter() >= 1e-11 && splittable(box)) {
      if (auto z = newton_polish(f, box.center(), 4.0 * box.diameter() + 1e-6, 1);
          z && residual_ok(f, *z) &&
          std::abs(*z - box.center()) <= 2.0 * box.diameter() + 1e-9) {
        out.push_back(make_record(f, *z, 1, strip_index, ZeroMethod::newton));
        return;
      }
      Box lo, hi;
      split_box(box, depth++, lo, hi);
      box = box_count(f, lo) == 1 ? lo : hi;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::perturbation_exhausted) throw;
    // the contour cannot dodge the zero any more; polish from where we are
    if (auto z = newton_polish(f, box.center(), 4.0 * box.diameter() + 1e-3, 1);
        z && residual_ok(f, *z) &&
        std::abs(*z - box.center()) <= 2.0 * box.diameter() + 1e-3) {
      out.push_back(make_record(f, *z, 1, strip_index, ZeroMethod::newton));
      return;
    }
  }
  out.push_back(make_record(f, box.center(), 1, strip_index, ZeroMethod::box_limit));
}

void subdivide(const ExpSum& f, const Box& box, int count, int depth, int strip_index,
               std::vector<ZeroRecord>& out) {
  if (count <= 0) return;
  if (count == 1) {
    emit_simple(f, box, strip_index, out);
    return;
  }
  if (box.diameter() < kMinBoxDiameter || !splittable(box)) {
    emit_cluster(f, box, count, strip_index, out);
    return;
  }
  Box lo, hi;
  split_box(box, depth, lo, hi);
  int c_lo;
  try {
    c_lo = box_count(f, lo);
  } catch (const Error& e) {
    // edges cannot dodge the zeros any more: the box is one tight cluster
    if (e.kind() == ErrorKind::perturbation_exhausted) {
      emit_cluster(f, box, count, strip_index, out);
      return;
    }
    throw;
  }
  c_lo = std::min(c_lo, count);
  subdivide(f, lo, c_lo, depth + 1, strip_index, out);
  subdivide(f, hi, count - c_lo, depth + 1, strip_index, out);
}

void sort_records(std::vector<ZeroRecord>& recs) {
  std::sort(recs.begin(), recs.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    return a.z.real() < b.z.real();
  });
}

std::optional<std::pair<long long, long long>> rational_approx(double x, long long max_den,
                                                               double tol) {
  long long p0 = 1, q0 = 0;
  long long p1 = static_cast<long long>(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  if (std::abs(x - static_cast<double>(p1)) <= tol) return {{p1, 1}};
  for (int it = 0; it < 64; ++it) {
    if (frac <= 0.0) break;
    const double inv = 1.0 / frac;
    if (inv > 9.1e18) break;
    const long long a = static_cast<long long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den) return std::nullopt;
    if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= tol)
      return {{p2, q2}};
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(ZeroMethod m) {
  switch (m) {
    case ZeroMethod::newton:
      return "newton";
    case ZeroMethod::box_limit:
      return "box-limit";
    case ZeroMethod::oracle:
      return "oracle";
  }
  return "?";
}

std::vector<ZeroRecord> find_zeros(const ExpSum& f, const CriticalStrip& strip,
                                   double y_lo, double y_hi) {
  if (!(y_lo < y_hi))
    throw Error(ErrorKind::invalid_input, "window must satisfy y_lo < y_hi");
  const double pad = strip_search_pad(strip);
  const Box root{strip.x_lo - pad, strip.x_hi + pad, y_lo, y_hi};
  const int total = box_count(f, root);
  std::vector<ZeroRecord> out;
  out.reserve(static_cast<std::size_t>(total));
  subdivide(f, root, total, 0, strip.index, out);
  sort_records(out);
  return out;
}

std::vector<ZeroRecord> find_zeros(const ExpSum& f, const StripDecomposition& dec,
                                   double y_lo, double y_hi) {
  std::vector<ZeroRecord> all;
  for (const auto& s : dec.strips) {
    auto part = find_zeros(f, s, y_lo, y_hi);
    all.insert(all.end(), part.begin(), part.end());
  }
  sort_records(all);
  return all;
}

std::optional<CommensurableBasis> commensurable_basis(const ExpSum& f) {
  if (f.size() < 2 || !f.normalized()) return std::nullopt;
  const double w1 = f.freq(1);
  const int count = static_cast<int>(f.size());

  std::vector<long long> nums(static_cast<std::size_t>(count)),
      dens(static_cast<std::size_t>(count));
  nums[0] = 0;
  dens[0] = 1;
  for (int j = 1; j < count; ++j) {
    const auto pq = rational_approx(f.freq(j) / w1, 64, 1e-12);
    if (!pq) return std::nullopt;
    nums[static_cast<std::size_t>(j)] = pq->first;
    dens[static_cast<std::size_t>(j)] = pq->second;
  }
  long long lcm = 1;
  for (int j = 1; j < count; ++j) {
    lcm = std::lcm(lcm, dens[static_cast<std::size_t>(j)]);
    if (lcm > (1LL << 20)) return std::nullopt;
  }
  std::vector<long long> exps(static_cast<std::size_t>(count));
  long long g = 0;
  for (int j = 0; j < count; ++j) {
    exps[static_cast<std::size_t>(j)] =
        nums[static_cast<std::size_t>(j)] * (lcm / dens[static_cast<std::size_t>(j)]);
    g = std::gcd(g, exps[static_cast<std::size_t>(j)]);
  }
  if (g == 0) return std::nullopt;
  for (auto& e : exps) e /= g;
  const double delta = w1 * static_cast<double>(g) / static_cast<double>(lcm);
  for (int j = 0; j < count; ++j) {
    const double err =
        std::abs(f.freq(j) - static_cast<double>(exps[static_cast<std::size_t>(j)]) * delta);
    if (err > 1e-9 * (1.0 + std::abs(f.freq(j)))) return std::nullopt;
  }
  return CommensurableBasis{delta, std::move(exps)};
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[static_cast<std::size_t>(deg)]) == 0.0) --deg;
  if (deg <= 0) return {};

  std::vector<Complex> c(coeffs.begin(), coeffs.begin() + deg + 1);
  const Complex lead = c.back();
  for (auto& v : c) v /= lead;

  double rad = 0.0;
  for (int i = 0; i < deg; ++i) rad = std::max(rad, std::abs(c[static_cast<std::size_t>(i)]));
  rad = 1.0 + rad;

  std::vector<Complex> z(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / deg + 0.4;
    z[static_cast<std::size_t>(i)] = rad * Complex(std::cos(th), std::sin(th));
  }

  const auto horner = [&](Complex u, Complex& p, Complex& dp) {
    p = c[static_cast<std::size_t>(deg)];
    dp = {0.0, 0.0};
    for (int i = deg - 1; i >= 0; --i) {
      dp = dp * u + p;
      p = p * u + c[static_cast<std::size_t>(i)];
    }
  };

  double worst = kInf;
  for (int sweep = 0; sweep < 500; ++sweep) {
    worst = 0.0;
    for (int i = 0; i < deg; ++i) {
      Complex p, dp;
      horner(z[static_cast<std::size_t>(i)], p, dp);
      if (std::abs(p) == 0.0) continue;
      if (std::abs(dp) == 0.0) {
        z[static_cast<std::size_t>(i)] += Complex(1e-8, 1e-8);
        worst = kInf;
        continue;
      }
      const Complex newton = p / dp;
      Complex rep{0.0, 0.0};
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        Complex diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
        if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
        rep += 1.0 / diff;
      }
      Complex denom = 1.0 - newton * rep;
      if (std::abs(denom) < 1e-300) denom = Complex(1e-300, 0.0);
      const Complex step = newton / denom;
      z[static_cast<std::size_t>(i)] -= step;
      worst = std::max(worst,
                       std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
    }
    if (worst <= 1e-13) break;
  }
  if (!(worst <= 1e-9))
    throw Error(ErrorKind::no_convergence, "polynomial root iteration stalled");
  return z;
}

std::vector<ZeroRecord> oracle_zeros_commensurable(const ExpSum& f, double y_lo, double y_hi) {
  const auto basis = commensurable_basis(f);
  if (!basis)
    throw Error(ErrorKind::not_commensurable,
                "frequencies are not integer multiples of a common base");
  const double delta = basis->delta;
  const long long deg = basis->exponents.back();

  std::vector<Complex> coeffs(static_cast<std::size_t>(deg) + 1, Complex(0.0, 0.0));
  for (int j = 0; j < static_cast<int>(f.size()); ++j)
    coeffs[static_cast<std::size_t>(basis->exponents[static_cast<std::size_t>(j)])] +=
        f.coeff(j);
  auto roots = polynomial_roots(coeffs);

  // cluster nearby roots: a numeric m-fold root scatters by roughly eps^(1/m),
  // so the merge radius has to sit well above 1e-8 while staying below any
  // genuine root separation of interest; the cluster mean cancels the scatter
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(roots.size(), false);
  std::vector<ZeroRecord> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    const double radius = std::max(1e-10, 5e-7 * (1.0 + std::abs(roots[i])));
    for (std::size_t a = 0; a < cluster.size(); ++a) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(roots[j] - roots[cluster[a]]) <= radius) {
          cluster.push_back(j);
          used[j] = true;
        }
      }
    }
    Complex mean{0.0, 0.0};
    for (auto idx : cluster) mean += roots[idx];
    mean /= static_cast<double>(cluster.size());
    if (std::abs(mean) < 1e-300) continue;

    const int mult = static_cast<int>(cluster.size());
    if (mult >= 2) {
      // an m-fold root scatters by ~eps^(1/m) and its cluster mean still
      // carries a second-order offset; it is a simple root of the (m-1)-th
      // derivative, where Newton recovers it to machine precision
      std::vector<Complex> dc(coeffs.begin(), coeffs.end());
      for (int d = 0; d < mult - 1; ++d) {
        for (std::size_t i = 1; i < dc.size(); ++i)
          dc[i - 1] = static_cast<double>(i) * dc[i];
        dc.pop_back();
      }
      Complex u = mean;
      for (int it = 0; it < 40; ++it) {
        Complex p{0.0, 0.0}, dp{0.0, 0.0};
        for (std::size_t i = dc.size(); i-- > 0;) {
          dp = dp * u + p;
          p = p * u + dc[i];
        }
        if (std::abs(dp) == 0.0) break;
        const Complex step = p / dp;
        u -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(u))) break;
      }
      if (std::abs(u - mean) <= 1e-6 * (1.0 + std::abs(mean))) mean = u;
    }
    const double x = std::log(std::abs(mean)) / delta;
    const double theta = std::arg(mean);
    const double q_lo = (delta * y_lo - theta) / kTwoPi;
    const double q_hi = (delta * y_hi - theta) / kTwoPi;
    const long long m_min = static_cast<long long>(std::ceil(q_lo - 1e-9));
    const long long m_max = static_cast<long long>(std::floor(q_hi + 1e-9));
    for (long long m = m_min; m <= m_max; ++m) {
      const double y = (theta + kTwoPi * static_cast<double>(m)) / delta;
      const Complex z(x, y);
      out.push_back(make_record(f, z, mult, -1, ZeroMethod::oracle));
    }
  }
  sort_records(out);
  return out;
}

}  // namespace expsum
