#include "expsum/core.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "numeric_util.hpp"

namespace expsum {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double wrap_phase(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

ExpSum::ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty())
    throw Error(ErrorKind::degenerate_sum, "exponential sum needs at least one term");
  for (const auto& t : terms_) {
    if (!std::isfinite(t.freq) || !std::isfinite(t.coeff.real()) ||
        !std::isfinite(t.coeff.imag()))
      throw Error(ErrorKind::invalid_input, "non-finite coefficient or frequency");
    if (t.coeff.real() == 0.0 && t.coeff.imag() == 0.0)
      throw Error(ErrorKind::invalid_input, "zero coefficient term");
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpTerm& a, const ExpTerm& b) { return a.freq < b.freq; });
  for (std::size_t j = 1; j < terms_.size(); ++j)
    if (!(terms_[j - 1].freq < terms_[j].freq))
      throw Error(ErrorKind::invalid_input, "duplicate frequency");

  log_abs_.reserve(terms_.size());
  arg_.reserve(terms_.size());
  double lo = kInf, hi = -kInf;
  for (const auto& t : terms_) {
    const double la = std::log(std::abs(t.coeff));
    log_abs_.push_back(la);
    arg_.push_back(std::arg(t.coeff));
    lo = std::min(lo, la);
    hi = std::max(hi, la);
  }
  // ratios past 1e300 would push the log-scale arithmetic out of double range
  if (hi - lo > std::log(1e300))
    throw Error(ErrorKind::invalid_input, "coefficient magnitude ratio exceeds 1e300");

  normalized_ = terms_.size() >= 2 && terms_[0].freq == 0.0 &&
                terms_[0].coeff == Complex(1.0, 0.0);
}

NormalizeResult normalize(const ExpSum& g) {
  if (g.size() < 2)
    throw Error(ErrorKind::degenerate_sum, "normalization needs at least two terms");
  if (g.normalized()) return {g, 0.0, Complex(1.0, 0.0)};

  const Complex lead = g.coeff(0);
  const double base = g.freq(0);
  std::vector<ExpTerm> out;
  out.reserve(g.size());
  out.push_back({Complex(1.0, 0.0), 0.0});
  for (int j = 1; j < static_cast<int>(g.size()); ++j)
    out.push_back({g.coeff(j) / lead, g.freq(j) - base});
  return {ExpSum(std::move(out)), base, lead};
}

double dominant_exponent(const ExpSum& f, double x, int* index) {
  const auto& terms = f.terms();
  int k = 0;
  double best = -kInf;
  for (int j = 0; j < static_cast<int>(terms.size()); ++j) {
    const double e = terms[static_cast<std::size_t>(j)].freq * x + f.log_abs_coeff(j);
    if (e > best) {  // ties keep the smallest index
      best = e;
      k = j;
    }
  }
  if (index) *index = k;
  return best;
}

ScaledEval eval_scaled_full(const ExpSum& f, Complex z) {
  const double x = z.real(), y = z.imag();
  int k = 0;
  const double ek = dominant_exponent(f, x, &k);
  const auto& terms = f.terms();
  const int count = static_cast<int>(terms.size());

  detail::Compensated re, im;
  for (int j = 0; j < count; ++j) {
    const double t = terms[static_cast<std::size_t>(j)].freq * x + f.log_abs_coeff(j) - ek;
    const double ph =
        (terms[static_cast<std::size_t>(j)].freq - terms[static_cast<std::size_t>(k)].freq) * y +
        f.arg_coeff(j) - f.arg_coeff(k);
    const double m = std::exp(t);  // <= 1 by dominance
    re.add(m * std::cos(ph));
    im.add(m * std::sin(ph));
  }
  const double sre = re.value(), sim = im.value();
  const double rel = std::log(std::hypot(sre, sim));
  const double phase =
      wrap_phase(std::atan2(sim, sre) + f.arg_coeff(k) +
                 terms[static_cast<std::size_t>(k)].freq * y);
  return {rel + ek, phase, rel, k};
}

LogScaledValue eval_scaled(const ExpSum& f, Complex z) {
  const ScaledEval v = eval_scaled_full(f, z);
  return {v.logmod, v.phase, v.dominant_index};
}

ScaledTraceEval eval_scaled_trace(const ExpSum& f, Complex z) {
  const double x = z.real(), y = z.imag();
  int k = 0;
  const double ek = dominant_exponent(f, x, &k);
  const auto& terms = f.terms();
  const int count = static_cast<int>(terms.size());

  detail::Compensated re, im, dre, dim;
  for (int j = 0; j < count; ++j) {
    const double w = terms[static_cast<std::size_t>(j)].freq;
    const double t = w * x + f.log_abs_coeff(j) - ek;
    const double ph = (w - terms[static_cast<std::size_t>(k)].freq) * y +
                      f.arg_coeff(j) - f.arg_coeff(k);
    const double m = std::exp(t);
    const double c = m * std::cos(ph), s = m * std::sin(ph);
    re.add(c);
    im.add(s);
    dre.add(w * c);
    dim.add(w * s);
  }
  const double sre = re.value(), sim = im.value();
  const double mag = std::hypot(sre, sim);
  const double dmag = std::hypot(dre.value(), dim.value());
  const double rel = std::log(mag);
  const double phase =
      wrap_phase(std::atan2(sim, sre) + f.arg_coeff(k) +
                 terms[static_cast<std::size_t>(k)].freq * y);
  const double dist = dmag > 0.0 ? mag / dmag : kInf;
  return {rel + ek, phase, rel, dist, k};
}

Complex eval(const ExpSum& f, Complex z) { return eval_scaled(f, z).value(); }

Complex eval_logderiv(const ExpSum& f, Complex z) {
  const double x = z.real(), y = z.imag();
  int k = 0;
  dominant_exponent(f, x, &k);
  const auto& terms = f.terms();
  const int count = static_cast<int>(terms.size());
  const double ek = terms[static_cast<std::size_t>(k)].freq * x + f.log_abs_coeff(k);

  detail::Compensated dre, dim, nre, nim;
  for (int j = 0; j < count; ++j) {
    const double w = terms[static_cast<std::size_t>(j)].freq;
    const double t = w * x + f.log_abs_coeff(j) - ek;
    const double ph = (w - terms[static_cast<std::size_t>(k)].freq) * y +
                      f.arg_coeff(j) - f.arg_coeff(k);
    const double m = std::exp(t);
    const double c = m * std::cos(ph), s = m * std::sin(ph);
    dre.add(c);
    dim.add(s);
    nre.add(w * c);
    nim.add(w * s);
  }
  const Complex den(dre.value(), dim.value());
  if (std::abs(den) < 1e-300)
    throw Error(ErrorKind::near_zero_divide, "logarithmic derivative at a zero of f", z);
  return Complex(nre.value(), nim.value()) / den;
}

double relative_logmod(const ExpSum& f, Complex z) {
  return eval_scaled_full(f, z).rel_logmod;
}

}  // namespace expsum
