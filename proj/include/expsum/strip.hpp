#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "expsum/core.hpp"

namespace expsum {

/// Maximal open vertical band where one term strictly dominates the others.
/// x_lo may be -infinity (dominant 0) and x_hi +infinity (dominant n).
struct ZeroFreeRegion {
  double x_lo;
  double x_hi;
  int dominant;
};

/// Closed vertical band between two consecutive zero-free regions; all zeros
/// live in these, boundary lines included. index is the position within the
/// owning decomposition, left to right.
struct CriticalStrip {
  double x_lo;
  double x_hi;
  int left_dominant;
  int right_dominant;
  int index;
};

struct StripDecomposition {
  std::vector<ZeroFreeRegion> regions;  // left to right
  std::vector<CriticalStrip> strips;    // left to right, regions.size()-1 of them
};

/// m_k(x) = (w_k x + log|H_k|) - log sum_{j != k} |H_j| e^{w_j x}, evaluated
/// in the scaled frame. Positive exactly where term k dominates; zero on the
/// boundary line L_k.
double dominance_margin(const ExpSum& f, int k, double x);

/// Maximal open intervals where m_k > 0. Endpoints located to 1e-12; bounded
/// intervals narrower than 1e-10 are discarded as tangential.
std::vector<std::pair<double, double>> dominance_intervals(const ExpSum& f, int k);

/// Assembles all dominance intervals into alternating regions and strips.
/// Requires the normalized form.
StripDecomposition decompose(const ExpSum& f);

struct TheoremAResult {
  bool holds;
  double witness_sigma;  // first violating abscissa when holds == false
  int witness_k;         // index of the violated inequality (k = 0 is "1 <= sum")
};

/// Checks the n+1 real-part inequalities on (sigma0, sigma1), refining the
/// grid near potential sign changes down to a 1e-9 step. Only meaningful as
/// an if-and-only-if when the caller asserts the frequencies are linearly
/// independent over the rationals; that assertion is not verified here.
TheoremAResult theorem_a_check(const ExpSum& f, double sigma0, double sigma1);

/// Scan window outside which one of the extreme terms provably dominates.
std::pair<double, double> dominance_search_bracket(const ExpSum& f);

/// Horizontal slack used when counting over a closed strip: rectangles are
/// widened by this much into the flanking zero-free regions so that zeros
/// sitting exactly on either boundary line are captured.
inline double strip_search_pad(const CriticalStrip& s) {
  return 4e-7 * (1.0 + std::max(std::abs(s.x_lo), std::abs(s.x_hi)));
}

}  // namespace expsum
