// extraction.hpp - from raw phase-cycled spectrograms to retrieved 2D spectra.
//
// Stages, in pipeline order:
//   combine_phase_frames   frame1-frame3 and frame2-frame4; anything
//                          frame-independent (PFID, pump scatter) cancels.
//   enforce_causality      per T row: inverse FFT along omega_t to t',
//                          zero t' < tau+T (half weight at the boundary
//                          sample), FFT back. Recovers the complex field
//                          from the real heterodyne signal.
//   separate_2q_0q         S_2Q = S00 + i*S0pi2, S_0Q = S00 - i*S0pi2.
//   transform_T            FFT along T; exp(-i*w0*T) peaks at +w0; the
//                          effective axis spans (-pi/dT, +pi/dT].
//   retrieve_frequency_shift  per-column axis offset w_t + w_rf (2Q) or
//                          w_t - w_rf (0Q) plus the exp(i*w_t*tau) phase.
//   calibrate              constant axis shift, recorded separately so that
//                          +x then -x restores the axis bit-exactly.
//
// Every stage is linear in the signal and pure; rows/columns are processed
// independently.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cforge/grid.hpp"
#include "cforge/synthesis.hpp"

namespace cforge {

struct CausalSignal {
  Array2D<cplx> data;  // (T index, omega_t index)
  std::vector<double> t_grid;
  std::vector<double> omega_t_grid;
  double tau = 0.0;
  PhaseFrame frame_label;
};

// Separated but still in the (T, omega_t) domain.
struct SeparatedSignal {
  Array2D<cplx> data;
  std::vector<double> t_grid;
  std::vector<double> omega_t_grid;
  double tau = 0.0;
  Quantum kind = Quantum::TwoQuantum;
};

struct ComplexSpectrum2D {
  Array2D<cplx> data;                  // (omega_T index ascending, omega_t index)
  std::vector<double> omega_T_axis;    // uniform base grid
  std::vector<double> omega_t_axis;
  // Empty while the axis is the effective one; after retrieval, column c
  // lives on omega_T_axis + column_offsets[c] + calibration_offset.
  std::vector<double> column_offsets;
  Quantum kind = Quantum::TwoQuantum;
  int retrieval_sign = 0;  // 0 effective, +1 retrieved 2Q, -1 retrieved 0Q
  double calibration_offset = 0.0;  // rad/ps
  double tau = 0.0;

  bool uniform_axis() const { return column_offsets.empty(); }
  double column_shift(std::size_t c) const {
    return (column_offsets.empty() ? 0.0 : column_offsets[c]) + calibration_offset;
  }
};

// Requires the four frames (0,0), (0,pi/2), (0,pi), (0,3pi/2) in order.
// Returns (S_00, S_0pi2) = (frame1-frame3, frame2-frame4).
std::pair<Array2D<double>, Array2D<double>> combine_phase_frames(const RawSpectrogram& raw);

CausalSignal enforce_causality(const Array2D<double>& signal, double tau,
                               std::span<const double> t_grid,
                               std::span<const double> omega_t_grid);

std::pair<SeparatedSignal, SeparatedSignal> separate_2q_0q(const CausalSignal& s00,
                                                           const CausalSignal& s0pi2);

// zero_pad multiplies the T length before the FFT (>= 1; readout resolution
// only, the unpadded span fixes the physical bin).
ComplexSpectrum2D transform_T(const SeparatedSignal& separated, std::size_t zero_pad);

ComplexSpectrum2D retrieve_frequency_shift(const ComplexSpectrum2D& spec, double omega_rf,
                                           double tau);

ComplexSpectrum2D calibrate(const ComplexSpectrum2D& spec, double delta_omega);

// Linear interpolation of every column onto one uniform omega_T grid with the
// base bin width; regions without coverage are zero. Identity for spectra
// that are already uniform.
ComplexSpectrum2D resample_to_uniform(const ComplexSpectrum2D& spec);

struct PipelineOptions {
  std::size_t zero_pad = 4;
  double calibration = 0.0;  // rad/ps
};

struct PipelineProvenance {
  double tau = 0.0;
  double omega_rf = 0.0;
  double calibration = 0.0;
  std::size_t zero_pad = 4;
  std::size_t n_t = 0;
  std::size_t n_omega_t = 0;
  std::vector<PhaseFrame> frames;
};

struct PipelineResult {
  ComplexSpectrum2D two_quantum;
  ComplexSpectrum2D zero_quantum;
  PipelineProvenance provenance;
};

PipelineResult run_pipeline(const RawSpectrogram& raw, double omega_rf, double tau,
                            const PipelineOptions& options = {});

}  // namespace cforge
