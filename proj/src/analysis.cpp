#include "cforge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cforge/errors.hpp"
#include "cforge/fft.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

// Offset of the extremum of the parabola through (-1,yl), (0,y0), (+1,yr).
double parabolic_offset(double yl, double y0, double yr) {
  const double denom = yl - 2.0 * y0 + yr;
  if (denom == 0.0) return 0.0;
  double delta = 0.5 * (yl - yr) / denom;
  return std::clamp(delta, -0.5, 0.5);
}

double log_or_floor(double v) {
  return v > 0.0 ? std::log(v) : -745.0;  // below log(DBL_MIN)
}

void sort_by_modulus(std::vector<Peak>& peaks) {
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.modulus > b.modulus;
  });
}

struct Prediction {
  Peak peak;
  double width_T = 0.0;  // rad/ps, T-interval dephasing
  double width_t = 0.0;  // rad/ps, emission dephasing
};

}  // namespace

PeakList predicted_peaks(const LevelScheme& scheme, const std::vector<Pathway>& pathways,
                         double omega_rf, bool retrieved) {
  std::vector<Prediction> merged;
  const double eps = 1e-9;
  for (const auto& p : pathways) {
    const double w_t = coherence_omega(scheme, p.emission);
    const double w_T = retrieved ? coherence_omega(scheme, p.coherences[1])
                                 : effective_t_frequency(scheme, p, omega_rf);
    const double modulus = std::abs(dipole_product(scheme, p));
    const double g_T = pathway_t_gamma(scheme, p);
    const double g_t = pathway_emission_gamma(scheme, p);

    Prediction* slot = nullptr;
    for (auto& entry : merged) {
      if (std::abs(entry.peak.omega_T - w_T) <= eps &&
          std::abs(entry.peak.omega_t - w_t) <= eps) {
        slot = &entry;
        break;
      }
    }
    if (slot == nullptr) {
      Prediction entry;
      entry.peak.omega_T = w_T;
      entry.peak.omega_t = w_t;
      entry.peak.label = p.label(scheme);
      merged.push_back(entry);
      slot = &merged.back();
    } else {
      slot->peak.label += "+" + p.label(scheme);
    }
    slot->peak.modulus += modulus;
    slot->width_T = std::max(slot->width_T, g_T);
    slot->width_t = std::max(slot->width_t, g_t);
  }

  for (auto& a : merged) {
    for (const auto& b : merged) {
      if (&a == &b || !(b.peak.modulus > a.peak.modulus)) continue;
      if (std::abs(a.peak.omega_T - b.peak.omega_T) <= b.width_T &&
          std::abs(a.peak.omega_t - b.peak.omega_t) <= b.width_t) {
        a.peak.masked = true;
        break;
      }
    }
  }

  PeakList list;
  list.peaks.reserve(merged.size());
  for (auto& entry : merged) list.peaks.push_back(std::move(entry.peak));
  sort_by_modulus(list.peaks);
  return list;
}

PeakList find_peaks(const ComplexSpectrum2D& spec, double threshold_rel) {
  if (!(threshold_rel > 0.0) || !(threshold_rel < 1.0)) {
    throw validation_error("find_peaks: threshold_rel must lie in (0,1)");
  }
  if (!spec.uniform_axis()) {
    throw validation_error("find_peaks: spectrum must be on the uniform export grid");
  }
  PeakList list;
  const std::size_t rows = spec.data.rows();
  const std::size_t cols = spec.data.cols();
  if (rows < 3 || cols < 3) return list;

  Array2D<double> mag(rows, cols);
  double global_max = 0.0;
  for (std::size_t i = 0; i < spec.data.size(); ++i) {
    mag.data()[i] = std::abs(spec.data.data()[i]);
    global_max = std::max(global_max, mag.data()[i]);
  }
  if (global_max == 0.0) return list;
  const double floor = threshold_rel * global_max;

  const double step_T = axis_step(spec.omega_T_axis, "omega_T_axis");
  const double step_t = axis_step(spec.omega_t_axis, "omega_t_axis");

  for (std::size_t r = 1; r + 1 < rows; ++r) {
    for (std::size_t c = 1; c + 1 < cols; ++c) {
      const double m = mag(r, c);
      if (m < floor) continue;
      bool is_max = true;
      for (int dr = -1; dr <= 1 && is_max; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (mag(r + dr, c + dc) >= m) {
            is_max = false;
            break;
          }
        }
      }
      if (!is_max) continue;

      const double dr = parabolic_offset(log_or_floor(mag(r - 1, c)), log_or_floor(m),
                                         log_or_floor(mag(r + 1, c)));
      const double dc = parabolic_offset(log_or_floor(mag(r, c - 1)), log_or_floor(m),
                                         log_or_floor(mag(r, c + 1)));
      Peak peak;
      peak.omega_T = spec.omega_T_axis[r] + dr * step_T;
      peak.omega_t = spec.omega_t_axis[c] + dc * step_t;
      peak.modulus = m;
      list.peaks.push_back(std::move(peak));
    }
  }

  sort_by_modulus(list.peaks);
  std::vector<Peak> kept;
  for (auto& cand : list.peaks) {
    bool merged = false;
    for (const auto& acc : kept) {
      if (std::abs(cand.omega_T - acc.omega_T) < 0.5 * step_T &&
          std::abs(cand.omega_t - acc.omega_t) < 0.5 * step_t) {
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(cand));
  }
  list.peaks = std::move(kept);
  return list;
}

bool MatchReport::complete() const {
  return std::none_of(missed.begin(), missed.end(),
                      [](const Peak& p) { return !p.masked; });
}

MatchReport match_peaks(const PeakList& found, const PeakList& predicted,
                        double tol_omega) {
  struct Candidate {
    double distance;
    std::size_t f;
    std::size_t p;
  };
  std::vector<Candidate> candidates;
  for (std::size_t f = 0; f < found.peaks.size(); ++f) {
    for (std::size_t p = 0; p < predicted.peaks.size(); ++p) {
      const double dT = found.peaks[f].omega_T - predicted.peaks[p].omega_T;
      const double dt = found.peaks[f].omega_t - predicted.peaks[p].omega_t;
      if (std::abs(dT) <= tol_omega && std::abs(dt) <= tol_omega) {
        candidates.push_back({std::hypot(dT, dt), f, p});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.p != b.p) return a.p < b.p;
    return a.f < b.f;
  });

  MatchReport report;
  report.tolerance = tol_omega;
  std::vector<bool> f_used(found.peaks.size(), false);
  std::vector<bool> p_used(predicted.peaks.size(), false);
  for (const auto& cand : candidates) {
    if (f_used[cand.f] || p_used[cand.p]) continue;
    f_used[cand.f] = true;
    p_used[cand.p] = true;
    MatchedPair pair;
    pair.predicted = predicted.peaks[cand.p];
    pair.found = found.peaks[cand.f];
    pair.d_omega_T = pair.found.omega_T - pair.predicted.omega_T;
    pair.d_omega_t = pair.found.omega_t - pair.predicted.omega_t;
    report.matched.push_back(std::move(pair));
  }
  for (std::size_t p = 0; p < predicted.peaks.size(); ++p) {
    if (!p_used[p]) report.missed.push_back(predicted.peaks[p]);
  }
  for (std::size_t f = 0; f < found.peaks.size(); ++f) {
    if (!f_used[f]) report.extras.push_back(found.peaks[f]);
  }
  return report;
}

double dominant_frequency(std::span<const double> samples, double dt,
                          std::size_t pad_factor) {
  if (samples.size() < 4) {
    throw validation_error("dominant_frequency: need at least 4 samples");
  }
  if (pad_factor < 1) pad_factor = 1;
  std::size_t padded = 1;
  while (padded < samples.size() * pad_factor) padded <<= 1;

  std::vector<cplx> v(padded, cplx(0.0, 0.0));
  for (std::size_t n = 0; n < samples.size(); ++n) v[n] = cplx(samples[n], 0.0);
  FftPlan plan(padded);
  plan.forward(v);

  const std::size_t half = padded / 2;
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = 0; k <= half; ++k) {
    const double m = std::abs(v[k]);
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  double refined = static_cast<double>(best);
  if (best > 0 && best < half) {
    refined += parabolic_offset(log_or_floor(std::abs(v[best - 1])),
                                log_or_floor(std::abs(v[best])),
                                log_or_floor(std::abs(v[best + 1])));
  }
  return kTwoPi * refined / (static_cast<double>(padded) * dt);
}

}  // namespace cforge
