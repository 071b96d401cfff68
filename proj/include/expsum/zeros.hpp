#pragma once

#include <optional>
#include <span>
#include <vector>

#include "expsum/strip.hpp"
#include "expsum/winding.hpp"

namespace expsum {

enum class ZeroMethod { newton, box_limit, oracle };

const char* to_string(ZeroMethod m);

struct ZeroRecord {
  Complex z;
  int multiplicity;
  int strip_index;          // -1 when not attributed to a strip
  double residual_logmod;   // log |f(z)|
  ZeroMethod method;
};

/// All zeros with Im in [y_lo, y_hi) and Re in the closed strip, located by
/// recursive winding-count subdivision and polished by Newton iteration.
/// Boundary zeros follow the bottom/left attribution of count_zeros; zeros on
/// the strip's vertical boundary lines are included. Clusters that never
/// separate get one record carrying the cluster multiplicity. Records are
/// sorted by (Im, Re).
std::vector<ZeroRecord> find_zeros(const ExpSum& f, const CriticalStrip& strip,
                                   double y_lo, double y_hi);

/// Convenience: union over every strip of the decomposition, merged sorted.
std::vector<ZeroRecord> find_zeros(const ExpSum& f, const StripDecomposition& dec,
                                   double y_lo, double y_hi);

/// Common base delta > 0 and coprime integers p_j with freq_j = p_j * delta,
/// recovered by rational reconstruction of frequency ratios (denominators up
/// to 64, tolerance 1e-12). Empty when the frequencies are incommensurable.
struct CommensurableBasis {
  double delta;
  std::vector<long long> exponents;  // one per term, first is 0
};

std::optional<CommensurableBasis> commensurable_basis(const ExpSum& f);

/// Exact zero lattice for commensurable frequencies: substitutes u = e^{delta z},
/// solves the resulting polynomial with a simultaneous (Aberth) iteration and
/// maps every root to its vertical lattice of zeros with Im in [y_lo, y_hi].
/// Serves as the independent verification route for find_zeros.
/// Throws not_commensurable when no basis exists.
std::vector<ZeroRecord> oracle_zeros_commensurable(const ExpSum& f, double y_lo, double y_hi);

/// All roots of sum_i coeffs[i] u^i (Aberth iteration, 500 sweep cap,
/// 1e-13 relative convergence).
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

}  // namespace expsum
