#pragma once

#include "expsum/core.hpp"

namespace expsum {

/// Axis-aligned integration domain. Traversal is positively oriented:
/// bottom left-to-right, right edge up, top right-to-left, left edge down.
struct Rectangle {
  double x_lo;
  double x_hi;
  double y_lo;
  double y_hi;
};

struct WindingResult {
  int count;                  // zeros inside, boundary zeros attributed bottom/left
  double min_boundary_logmod; // smallest log|f| seen on the contour
  int perturbations_applied;
  long segments_evaluated;    // total sample points across the four edges
};

struct BacklundBound {
  Complex z1;
  Complex z2;
  double disc_radius;     // R
  double segment_length;  // T = |z2 - z1|
  double bound;           // right-hand side of the lemma
  double lhs;             // |phase change along [z1,z2]| / (2 pi)
};

/// Continuously unwrapped change of arg f along the straight segment a -> b.
/// Adaptive subdivision until consecutive sampled phases differ by less than
/// pi/2. Throws zero_on_path when a sample falls inside the relative 1e-12
/// zero basin, no_convergence past 2^26 points.
double phase_change(const ExpSum& f, Complex a, Complex b);

/// Argument-principle count over rect. Boundary collisions are handled by
/// deterministic edge perturbations seeded from the rectangle hash; a zero
/// within the perturbation zone of an edge is counted iff the edge is the
/// bottom or the left one. Throws perturbation_exhausted after 32 attempts.
WindingResult count_zeros(const ExpSum& f, const Rectangle& rect);

/// Both sides of Backlund's inequality for the segment [z1, z2] and a disc
/// of radius disc_radius > |z2 - z1| centered at z1. The disc maximum is
/// taken on the circle (maximum modulus), sampled at 4096 points and then
/// polished by golden-section search.
BacklundBound backlund_bound(const ExpSum& f, Complex z1, Complex z2, double disc_radius);

}  // namespace expsum
