// analysis.hpp - peak prediction, detection and matching.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cforge/extraction.hpp"
#include "cforge/level_scheme.hpp"
#include "cforge/pathways.hpp"

namespace cforge {

struct Peak {
  double omega_T = 0.0;  // rad/ps
  double omega_t = 0.0;  // rad/ps
  double modulus = 0.0;
  std::string label;
  bool masked = false;  // predicted peaks only: covered by a stronger neighbor
};

// Sorted descending by modulus; no two peaks closer than half a resolution
// bin on both axes.
struct PeakList {
  std::vector<Peak> peaks;
};

// Positions implied by the level model. retrieved = false gives effective
// positions (omega_emit, omega_Tcoh - s*omega_rf - omega_emit); retrieved =
// true gives (omega_emit, omega_Tcoh), independent of omega_rf. Coincident
// pathway positions merge into one peak (modulus = summed |dipole products|).
// A peak is flagged masked when a stronger prediction sits within the
// stronger peak's own linewidths on both axes.
PeakList predicted_peaks(const LevelScheme& scheme, const std::vector<Pathway>& pathways,
                         double omega_rf, bool retrieved);

// Local maxima of the modulus above threshold_rel * global max on a uniform
// grid, refined by three-point parabolic interpolation of the log modulus
// and merged within half a bin.
PeakList find_peaks(const ComplexSpectrum2D& spec, double threshold_rel);

struct MatchedPair {
  Peak predicted;
  Peak found;
  double d_omega_T = 0.0;  // found - predicted, rad/ps
  double d_omega_t = 0.0;
};

struct MatchReport {
  std::vector<MatchedPair> matched;
  std::vector<Peak> missed;  // unmatched predictions (masked ones flagged)
  std::vector<Peak> extras;  // unmatched findings
  double tolerance = 0.0;    // rad/ps

  // Every non-masked prediction was matched.
  bool complete() const;
};

// Greedy nearest-neighbor matching; a pair is admissible when both axis
// residuals are within tol_omega.
MatchReport match_peaks(const PeakList& found, const PeakList& predicted,
                        double tol_omega);

// Dominant oscillation frequency (>= 0, rad per unit of dt) of a real
// sampled signal via a zero-padded periodogram with parabolic refinement.
double dominant_frequency(std::span<const double> samples, double dt,
                          std::size_t pad_factor = 8);

}  // namespace cforge
