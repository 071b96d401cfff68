#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "expsum/core.hpp"
#include "expsum/zeros.hpp"

namespace testutil {

using expsum::Complex;
using expsum::ExpSum;
using expsum::ExpTerm;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * kPi;

inline ExpSum make_sum(std::vector<std::pair<Complex, double>> spec) {
  std::vector<ExpTerm> terms;
  terms.reserve(spec.size());
  for (const auto& [c, w] : spec) terms.push_back({c, w});
  return ExpSum(std::move(terms));
}

/// 1 + e^z + e^{2z}: one strip, zeros on the imaginary axis.
inline ExpSum three_term() {
  return make_sum({{{1, 0}, 0.0}, {{1, 0}, 1.0}, {{1, 0}, 2.0}});
}

/// 6 - 5 e^z + e^{2z} = (e^z - 2)(e^z - 3): zeros on Re = log 2 and log 3.
inline ExpSum two_lines_raw() {
  return make_sum({{{6, 0}, 0.0}, {{-5, 0}, 1.0}, {{1, 0}, 2.0}});
}

inline ExpSum two_lines() { return expsum::normalize(two_lines_raw()).sum; }

/// 4 - 4 e^z + e^{2z} = (e^z - 2)^2: double zeros at log 2 + 2 pi i k.
inline ExpSum double_root_raw() {
  return make_sum({{{4, 0}, 0.0}, {{-4, 0}, 1.0}, {{1, 0}, 2.0}});
}

inline ExpSum double_root() { return expsum::normalize(double_root_raw()).sum; }

/// 1 + e^z + e^{sqrt(2) z}: rationally independent frequencies.
inline ExpSum irrational_pair() {
  return make_sum({{{1, 0}, 0.0}, {{1, 0}, 1.0}, {{1, 0}, std::numbers::sqrt2}});
}

/// Direct unscaled evaluation, safe only for moderate Re(z).
inline Complex naive_eval(const ExpSum& f, Complex z) {
  Complex acc{0.0, 0.0};
  for (const auto& t : f.terms()) acc += t.coeff * std::exp(t.freq * z);
  return acc;
}

/// Fixed-step phase unwrapping along a segment, the brute-force counterpart
/// of the adaptive tracer.
inline double dense_phase_change(const ExpSum& f, Complex a, Complex b, long n) {
  double total = 0.0;
  double prev = expsum::eval_scaled(f, a).phase;
  const Complex dir = b - a;
  for (long i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    const double ph = expsum::eval_scaled(f, a + t * dir).phase;
    total += expsum::wrap_phase(ph - prev);
    prev = ph;
  }
  return total;
}

/// Random normalized sum with the coefficient and frequency ranges used by
/// the randomized checks. Adjacent frequencies keep a minimum gap so the
/// strip geometry stays well conditioned.
inline ExpSum random_normalized_sum(std::mt19937_64& rng, int max_n = 5,
                                    double coeff_lo = 0.2, double coeff_hi = 5.0,
                                    double freq_hi = 5.0, double min_gap = 0.15) {
  std::uniform_int_distribution<int> n_dist(2, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = n_dist(rng);
  std::vector<double> freqs;
  int guard = 0;
  while (static_cast<int>(freqs.size()) < n && guard++ < 10000) {
    const double w = unit(rng) * (freq_hi - 0.05) + 0.05;
    bool ok = w > min_gap;
    for (double v : freqs) ok = ok && std::abs(v - w) >= min_gap;
    if (ok) freqs.push_back(w);
  }
  std::sort(freqs.begin(), freqs.end());
  std::vector<ExpTerm> terms{{{1.0, 0.0}, 0.0}};
  const double log_lo = std::log(coeff_lo), log_hi = std::log(coeff_hi);
  for (double w : freqs) {
    const double mag = std::exp(log_lo + unit(rng) * (log_hi - log_lo));
    const double arg = unit(rng) * kTwoPi - kPi;
    terms.push_back({Complex(mag * std::cos(arg), mag * std::sin(arg)), w});
  }
  return ExpSum(std::move(terms));
}

/// Random sum with frequencies p_j * delta, reducible to a polynomial in
/// e^{delta z}. max_exponent caps the polynomial degree.
inline ExpSum random_commensurable_sum(std::mt19937_64& rng, int max_exponent = 12) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> deg_dist(2, max_exponent);
  const int deg = deg_dist(rng);
  const double delta = 0.4 + 1.2 * unit(rng);

  std::vector<int> exps{0, deg};
  for (int e = 1; e < deg; ++e)
    if (unit(rng) < 0.4) exps.push_back(e);
  std::sort(exps.begin(), exps.end());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());

  std::vector<ExpTerm> terms{{{1.0, 0.0}, 0.0}};
  for (std::size_t i = 1; i < exps.size(); ++i) {
    const double mag = 0.3 + 2.7 * unit(rng);
    const double arg = unit(rng) * kTwoPi - kPi;
    terms.push_back(
        {Complex(mag * std::cos(arg), mag * std::sin(arg)), exps[i] * delta});
  }
  return ExpSum(std::move(terms));
}

/// (e^{delta z} - a)^2 * prod (e^{delta z} - b_i), normalized: a guaranteed
/// double zero plus optional simple companions.
inline ExpSum double_root_sum(std::mt19937_64& rng, int extra_roots = 0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double delta = 0.7 + 0.9 * unit(rng);
  const double mag = 0.7 + 1.8 * unit(rng);
  const double arg = unit(rng) * kTwoPi - kPi;
  const Complex a(mag * std::cos(arg), mag * std::sin(arg));

  std::vector<Complex> poly{1.0};  // coefficients, low degree first
  const auto mul_root = [&poly](Complex root) {
    std::vector<Complex> next(poly.size() + 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * (-root);
      next[i + 1] += poly[i];
    }
    poly.swap(next);
  };
  mul_root(a);
  mul_root(a);
  for (int i = 0; i < extra_roots; ++i) {
    const double m2 = 0.5 + 2.0 * unit(rng);
    const double a2 = unit(rng) * kTwoPi - kPi;
    mul_root(Complex(m2 * std::cos(a2), m2 * std::sin(a2)));
  }

  std::vector<ExpTerm> terms{{{1.0, 0.0}, 0.0}};
  const Complex lead = poly[0];
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const Complex c = poly[i] / lead;
    if (std::abs(c) < 1e-12) continue;
    terms.push_back({c, static_cast<double>(i) * delta});
  }
  return ExpSum(std::move(terms));
}

}  // namespace testutil
