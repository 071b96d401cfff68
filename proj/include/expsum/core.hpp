#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsum {

using Complex = std::complex<double>;

/// Failure categories carried by Error. The CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_input,
  degenerate_sum,
  near_zero_divide,
  zero_on_path,
  no_convergence,
  perturbation_exhausted,
  zero_at_anchor,
  invalid_radius,
  not_commensurable,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, Complex where = {0.0, 0.0})
      : std::runtime_error(message), kind_(kind), where_(where) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Point attached to the failure when one makes sense (zero collisions etc).
  Complex where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  Complex where_;
};

struct ExpTerm {
  Complex coeff;  // nonzero
  double freq;    // real exponent multiplier
};

/// Exponential sum  sum_j coeff_j * exp(freq_j * z)  with terms kept sorted by
/// strictly increasing frequency. Immutable after construction; safe to share
/// across threads.
///
/// The sum is "normalized" when the first term is exactly 1 * exp(0 * z) and
/// at least one further term follows; all remaining frequencies are then
/// positive by the sort order.
class ExpSum {
 public:
  explicit ExpSum(std::vector<ExpTerm> terms);

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Number of terms beyond the first (the "n" of the normalized form).
  int order() const noexcept { return static_cast<int>(terms_.size()) - 1; }
  bool normalized() const noexcept { return normalized_; }

  double freq(int j) const { return terms_[static_cast<std::size_t>(j)].freq; }
  Complex coeff(int j) const { return terms_[static_cast<std::size_t>(j)].coeff; }
  double log_abs_coeff(int j) const { return log_abs_[static_cast<std::size_t>(j)]; }
  double arg_coeff(int j) const { return arg_[static_cast<std::size_t>(j)]; }
  double max_freq() const { return terms_.back().freq; }

 private:
  std::vector<ExpTerm> terms_;
  std::vector<double> log_abs_;
  std::vector<double> arg_;
  bool normalized_ = false;
};

/// Value in log-polar form: value = exp(logmod) * exp(i * phase).
/// logmod == -infinity encodes an exact zero. dominant_index names the term
/// whose exponent set the scale at this point.
struct LogScaledValue {
  double logmod;
  double phase;  // principal value in (-pi, pi]
  int dominant_index;

  Complex value() const {
    const double m = std::exp(logmod);
    return {m * std::cos(phase), m * std::sin(phase)};
  }
};

/// Extended evaluation result. rel_logmod = logmod minus the dominant
/// exponent, i.e. log |f| measured relative to the largest term; it is the
/// quantity compared against zero-proximity thresholds.
struct ScaledEval {
  double logmod;
  double phase;
  double rel_logmod;
  int dominant_index;
};

/// ScaledEval plus |f/f'|, a sharp upper proxy for the distance to the
/// nearest zero cluster: near an m-fold zero, |f/f'| = dist/m. Contour
/// tracing keys its refinement on it. Infinity where f' vanishes.
struct ScaledTraceEval {
  double logmod;
  double phase;
  double rel_logmod;
  double zero_distance;
  int dominant_index;
};

struct NormalizeResult {
  ExpSum sum;
  double shift;       // frequency of the factored-out term
  Complex prefactor;  // its coefficient
};

/// Divides out the leading term so the result starts with 1 * exp(0 * z).
/// The zero set is unchanged: g(z) = prefactor * exp(shift*z) * result(z).
NormalizeResult normalize(const ExpSum& g);

ScaledEval eval_scaled_full(const ExpSum& f, Complex z);
ScaledTraceEval eval_scaled_trace(const ExpSum& f, Complex z);
LogScaledValue eval_scaled(const ExpSum& f, Complex z);

/// Plain complex value; overflows to infinity for extreme Re(z). Use
/// eval_scaled when that matters.
Complex eval(const ExpSum& f, Complex z);

/// f'(z)/f(z) computed in the scaled frame. Throws near_zero_divide when the
/// scaled denominator drops below 1e-300.
Complex eval_logderiv(const ExpSum& f, Complex z);

/// max_j (freq_j * x + log|coeff_j|), ties resolved to the smallest index.
double dominant_exponent(const ExpSum& f, double x, int* index = nullptr);

/// log |f(z)| relative to the dominant term at z (the rel_logmod field).
double relative_logmod(const ExpSum& f, Complex z);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double theta);

}  // namespace expsum
