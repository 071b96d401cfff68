#pragma once

#include <span>
#include <vector>

#include "expsum/strip.hpp"
#include "expsum/zeros.hpp"

namespace expsum {

struct DensitySample {
  double r;
  long count;
  double deviation;  // count - slope_expected * r
};

struct DensityReport {
  int strip_index;
  double slope_expected;  // |w_j - w_k| / (2 pi) for the flanking dominants
  std::vector<DensitySample> samples;
  double max_abs_deviation;
  double langer_max_deviation;  // NaN until a whole-strip check fills it in
  int langer_n;
};

struct LangerResult {
  double max_deviation;
  bool pass;
  std::vector<DensitySample> samples;  // deviation measured against w_n r / (2 pi)
};

struct RealPartClosure {
  std::vector<long> histogram;
  double bin_lo;
  double bin_hi;
  double re_min;
  double re_max;
  double max_gap;  // largest gap between consecutive sorted real parts
  long zero_count;
};

struct DiscLine {
  double abscissa;
  long discs_met;
  long discs_met_beyond_cutoff;
};

struct DiscExperiment {
  double radii_partial_sum;
  double analytic_tail_bound;
  long lines_tested;
  long lines_hitting_infinitely;  // lines meeting a disc in the outer decade
  double measure_estimate_epsilon;
  double cutoff_modulus;
  long zero_count;
  std::vector<DiscLine> lines;
};

/// Zero counts over strip-index rectangles of height r anchored at y0,
/// against the expected line |w_j - w_k| r / (2 pi).
DensityReport strip_density(const ExpSum& f, const StripDecomposition& dec,
                            int strip_index, std::span<const double> r_values,
                            double y0 = 0.0);

/// n(r) over the spanning rectangle covering every strip, against
/// w_n r / (2 pi); passes when the worst deviation stays within n + 1e-6.
LangerResult langer_check(const ExpSum& f, const StripDecomposition& dec,
                          std::span<const double> r_values, double y0 = 0.0);

/// Zeros with Im in [r, r + band) per sampled r (or the mirrored band
/// [-r - band, -r) when lower_half is set).
std::vector<std::pair<double, long>> unit_band_counts(
    const ExpSum& f, const StripDecomposition& dec, int strip_index,
    std::span<const double> r_values, double band = 1.0, bool lower_half = false);

/// Distribution of zero real parts over |Im| <= y_horizon.
RealPartClosure real_part_closure(const ExpSum& f, const StripDecomposition& dec,
                                  double y_horizon, int bins);

/// Upper bound for sum of disc radii over zeros with |z| > from_modulus,
/// via 3 * integral of ((w_n/pi) t + n) / ((1+t)^2 log^2(e+t)).
double disc_tail_bound(const ExpSum& f, double from_modulus);

/// Shrinking-disc experiment: enumerates zeros with |z| <= modulus_horizon
/// (repeated per multiplicity, ordered by modulus), sums the disc radii
/// r = (1+|z|)^-1 log^-2(e+|z|), bounds the tail analytically and probes
/// evenly spaced vertical lines for disc hits.
DiscExperiment disc_experiment(const ExpSum& f, const StripDecomposition& dec,
                               double modulus_horizon, int line_samples,
                               double cutoff_modulus = 100.0);

}  // namespace expsum
