#pragma once

#include <vector>

#include "cavityhom/dynamics.hpp"

namespace cavityhom {

// Two-photon beamsplitter correlation versus delay, and the visibility
// V = 1 - g2[0] / g2_limit. The limit is the analytic value 1/2 for
// non-overlapping wavepackets; the numerically evaluated g2 at tau = T is
// recorded alongside as a cross-check. overlap_zero is the normalized
// coherence overlap at tau = 0 (auditable against other conventions).
struct HOMResult {
  std::vector<double> tau_values;
  std::vector<double> g2_values;
  double g2_zero = 0.0;
  double g2_limit = 0.5;
  double g2_limit_numeric = 0.0;
  double visibility = 0.0;
  double overlap_zero = 0.0;
};

// Scale the coherence so the trapezoid integral of its diagonal is 1.
// Throws if no photon was emitted (photon_number below threshold).
CoherenceMatrix normalize_coherence(const CoherenceMatrix& g);

// g2[tau] between two normalized coherences on the same grid; tau must be a
// grid multiple (negative allowed) and the shifted kernel is zero-padded
// outside [0, T].
double hom_correlation(const CoherenceMatrix& ga, const CoherenceMatrix& gb, double tau);

// Visibility plus a tau sweep with the given stride (in grid steps) over
// [-T, T]. stride = 0 keeps only tau = 0 and tau = T; a positive stride must
// divide n_steps. Inputs must be normalized.
HOMResult visibility(const CoherenceMatrix& ga, const CoherenceMatrix& gb,
                     int tau_stride = 0, unsigned n_threads = 0);

}  // namespace cavityhom
