#include "cforge/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cforge/errors.hpp"
#include "cforge/fft.hpp"
#include "cforge/parallel.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

cplx polar_unit(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

void require_same_axes(const CausalSignal& a, const CausalSignal& b) {
  if (!a.data.same_shape(b.data) || a.t_grid != b.t_grid ||
      a.omega_t_grid != b.omega_t_grid || a.tau != b.tau) {
    throw validation_error("separate_2q_0q: inputs disagree on axes or tau");
  }
}

}  // namespace

std::pair<Array2D<double>, Array2D<double>> combine_phase_frames(const RawSpectrogram& raw) {
  const double quarter = kTwoPi / 4.0;
  const PhaseFrame expected[4] = {
      {0.0, 0.0}, {0.0, quarter}, {0.0, 2.0 * quarter}, {0.0, 3.0 * quarter}};
  bool ok = raw.frames.size() == 4 && raw.frame_phases.size() == 4;
  if (ok) {
    for (int i = 0; i < 4; ++i) {
      ok = ok && near(raw.frame_phases[i].phi1, expected[i].phi1) &&
           near(raw.frame_phases[i].phi1_prime, expected[i].phi1_prime);
    }
  }
  if (!ok) {
    throw stage_error(
        "combine_phase_frames: raw spectrogram must carry frames "
        "(0,0), (0,pi/2), (0,pi), (0,3pi/2) in that order");
  }

  const auto& f = raw.frames;
  Array2D<double> s00(f[0].rows(), f[0].cols());
  Array2D<double> s0pi2(f[0].rows(), f[0].cols());
  for (std::size_t i = 0; i < f[0].size(); ++i) {
    s00.data()[i] = f[0].data()[i] - f[2].data()[i];
    s0pi2.data()[i] = f[1].data()[i] - f[3].data()[i];
  }
  return {std::move(s00), std::move(s0pi2)};
}

CausalSignal enforce_causality(const Array2D<double>& signal, double tau,
                               std::span<const double> t_grid,
                               std::span<const double> omega_t_grid) {
  const std::size_t n_t = signal.rows();
  const std::size_t n_w = signal.cols();
  if (n_t != t_grid.size() || n_w != omega_t_grid.size()) {
    throw validation_error("enforce_causality: data shape does not match axes");
  }
  const double d_omega = axis_step(omega_t_grid, "omega_t_grid");
  const double dt = kTwoPi / (d_omega * static_cast<double>(n_w));
  const auto half = static_cast<long long>(n_w / 2);

  // The worst case is the largest T; the grid must hold tau+T in its
  // positive-time half or the anti-causal mirror wraps into the kept region.
  {
    const double t_max = tau + t_grid.back();
    if (std::llround(t_max / dt) >= half) {
      throw stage_error(
          "enforce_causality: tau+T = " + std::to_string(t_max) +
          " ps exceeds the representable time range " + std::to_string(half * dt) +
          " ps; sample omega_t more densely to widen the time window");
    }
    if (tau + t_grid.front() < 0.0) {
      throw validation_error("enforce_causality: tau+T must be >= 0");
    }
  }

  CausalSignal out;
  out.data = Array2D<cplx>(n_t, n_w);
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.omega_t_grid.assign(omega_t_grid.begin(), omega_t_grid.end());
  out.tau = tau;

  const FftPlan plan(n_w);
  parallel_for(n_t, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> row(n_w);
    for (std::size_t r = begin; r < end; ++r) {
      for (std::size_t n = 0; n < n_w; ++n) row[n] = cplx(signal(r, n), 0.0);
      plan.forward(row);

      const double boundary = tau + t_grid[r];
      const auto k_star = std::llround(boundary / dt);
      for (std::size_t k = 0; k < n_w; ++k) {
        const auto signed_k =
            static_cast<long long>(k) < half ? static_cast<long long>(k)
                                             : static_cast<long long>(k) - static_cast<long long>(n_w);
        if (signed_k == k_star) {
          row[k] *= 0.5;
        } else if (static_cast<double>(signed_k) * dt < boundary) {
          row[k] = cplx(0.0, 0.0);
        }
      }

      plan.inverse(row);
      const double scale = 1.0 / static_cast<double>(n_w);
      for (std::size_t n = 0; n < n_w; ++n) out.data(r, n) = row[n] * scale;
    }
  });
  return out;
}

std::pair<SeparatedSignal, SeparatedSignal> separate_2q_0q(const CausalSignal& s00,
                                                           const CausalSignal& s0pi2) {
  require_same_axes(s00, s0pi2);

  SeparatedSignal two;
  two.data = Array2D<cplx>(s00.data.rows(), s00.data.cols());
  two.t_grid = s00.t_grid;
  two.omega_t_grid = s00.omega_t_grid;
  two.tau = s00.tau;
  two.kind = Quantum::TwoQuantum;
  SeparatedSignal zero = two;
  zero.kind = Quantum::ZeroQuantum;

  const cplx i_unit(0.0, 1.0);
  for (std::size_t n = 0; n < s00.data.size(); ++n) {
    const cplx a = s00.data.data()[n];
    const cplx b = i_unit * s0pi2.data.data()[n];
    two.data.data()[n] = a + b;
    zero.data.data()[n] = a - b;
  }
  return {std::move(two), std::move(zero)};
}

ComplexSpectrum2D transform_T(const SeparatedSignal& separated, std::size_t zero_pad) {
  const std::size_t n_t = separated.data.rows();
  const std::size_t n_w = separated.data.cols();
  if (n_t < 8) {
    throw validation_error("transform_T: need at least 8 T samples, got " +
                           std::to_string(n_t));
  }
  if (zero_pad < 1) throw validation_error("transform_T: zero_pad must be >= 1");
  const double dT = axis_step(separated.t_grid, "t_grid");

  const std::size_t padded = n_t * zero_pad;
  // Ascending signed index so the axis spans (-pi/dT, +pi/dT].
  const long long k_lo = (padded % 2 == 0)
                             ? -(static_cast<long long>(padded) / 2 - 1)
                             : -(static_cast<long long>(padded) - 1) / 2;

  ComplexSpectrum2D spec;
  spec.data = Array2D<cplx>(padded, n_w);
  spec.omega_t_axis = separated.omega_t_grid;
  spec.kind = separated.kind;
  spec.tau = separated.tau;
  spec.omega_T_axis.resize(padded);
  for (std::size_t r = 0; r < padded; ++r) {
    spec.omega_T_axis[r] =
        kTwoPi * static_cast<double>(k_lo + static_cast<long long>(r)) /
        (static_cast<double>(padded) * dT);
  }

  const FftPlan plan(padded);
  parallel_for(n_w, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> column(padded);
    for (std::size_t c = begin; c < end; ++c) {
      for (std::size_t m = 0; m < padded; ++m) {
        column[m] = m < n_t ? separated.data(m, c) : cplx(0.0, 0.0);
      }
      // exp(+2 pi i m k / P) kernel: exp(-i*w0*T) lands at +w0.
      plan.inverse(column);
      for (std::size_t r = 0; r < padded; ++r) {
        const long long k_signed = k_lo + static_cast<long long>(r);
        const std::size_t k =
            static_cast<std::size_t>((k_signed + static_cast<long long>(padded)) %
                                     static_cast<long long>(padded));
        spec.data(r, c) = column[k] * dT;
      }
    }
  });
  return spec;
}

ComplexSpectrum2D retrieve_frequency_shift(const ComplexSpectrum2D& spec, double omega_rf,
                                           double tau) {
  if (!spec.uniform_axis() || spec.retrieval_sign != 0) {
    throw validation_error("retrieve_frequency_shift: spectrum already retrieved");
  }
  ComplexSpectrum2D out = spec;
  out.retrieval_sign = (spec.kind == Quantum::TwoQuantum) ? 1 : -1;
  out.column_offsets.resize(spec.omega_t_axis.size());
  for (std::size_t c = 0; c < spec.omega_t_axis.size(); ++c) {
    const double w_t = spec.omega_t_axis[c];
    out.column_offsets[c] = w_t + static_cast<double>(out.retrieval_sign) * omega_rf;
    const cplx phase = polar_unit(w_t * tau);
    for (std::size_t r = 0; r < out.data.rows(); ++r) out.data(r, c) *= phase;
  }
  return out;
}

ComplexSpectrum2D calibrate(const ComplexSpectrum2D& spec, double delta_omega) {
  if (spec.retrieval_sign == 0) {
    throw validation_error("calibrate: spectrum must be retrieved first");
  }
  ComplexSpectrum2D out = spec;
  out.calibration_offset += delta_omega;
  return out;
}

ComplexSpectrum2D resample_to_uniform(const ComplexSpectrum2D& spec) {
  // Uniform spectra (effective ones and previous resample outputs) already
  // carry their final axis.
  if (spec.uniform_axis()) return spec;
  const double step = axis_step(spec.omega_T_axis, "omega_T_axis");
  const std::size_t rows = spec.data.rows();
  const std::size_t cols = spec.data.cols();

  double lo = spec.omega_T_axis.front() + spec.column_shift(0);
  double hi = spec.omega_T_axis.back() + spec.column_shift(0);
  for (std::size_t c = 1; c < cols; ++c) {
    lo = std::min(lo, spec.omega_T_axis.front() + spec.column_shift(c));
    hi = std::max(hi, spec.omega_T_axis.back() + spec.column_shift(c));
  }
  const auto out_rows = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;

  ComplexSpectrum2D out;
  out.data = Array2D<cplx>(out_rows, cols, cplx(0.0, 0.0));
  out.omega_T_axis = uniform_axis(lo, step, out_rows);
  out.omega_t_axis = spec.omega_t_axis;
  out.kind = spec.kind;
  out.retrieval_sign = spec.retrieval_sign;
  out.calibration_offset = spec.calibration_offset;  // already baked into the axis
  out.tau = spec.tau;

  parallel_for(cols, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const double shift = spec.column_shift(c);
      for (std::size_t i = 0; i < out_rows; ++i) {
        const double target = out.omega_T_axis[i];
        const double pos = (target - shift - spec.omega_T_axis.front()) / step;
        const double fl = std::floor(pos);
        const auto j = static_cast<long long>(fl);
        const double frac = pos - fl;
        if (j >= 0 && static_cast<std::size_t>(j) + 1 < rows) {
          out.data(i, c) = (1.0 - frac) * spec.data(static_cast<std::size_t>(j), c) +
                           frac * spec.data(static_cast<std::size_t>(j) + 1, c);
        } else if (static_cast<std::size_t>(j) == rows - 1 && frac < 1e-9) {
          out.data(i, c) = spec.data(rows - 1, c);
        }
      }
    }
  });
  return out;
}

PipelineResult run_pipeline(const RawSpectrogram& raw, double omega_rf, double tau,
                            const PipelineOptions& options) {
  if (tau != raw.tau) {
    throw validation_error("run_pipeline: tau does not match the raw spectrogram");
  }
  auto [s00_raw, s0pi2_raw] = combine_phase_frames(raw);
  CausalSignal s00 = enforce_causality(s00_raw, tau, raw.t_grid, raw.omega_t_grid);
  s00.frame_label = raw.frame_phases[0];
  CausalSignal s0pi2 = enforce_causality(s0pi2_raw, tau, raw.t_grid, raw.omega_t_grid);
  s0pi2.frame_label = raw.frame_phases[1];

  auto [two_sep, zero_sep] = separate_2q_0q(s00, s0pi2);
  ComplexSpectrum2D two = transform_T(two_sep, options.zero_pad);
  ComplexSpectrum2D zero = transform_T(zero_sep, options.zero_pad);
  two = retrieve_frequency_shift(two, omega_rf, tau);
  zero = retrieve_frequency_shift(zero, omega_rf, tau);
  two = calibrate(two, options.calibration);
  zero = calibrate(zero, options.calibration);

  PipelineResult result;
  result.two_quantum = std::move(two);
  result.zero_quantum = std::move(zero);
  result.provenance = PipelineProvenance{raw.tau,
                                         omega_rf,
                                         options.calibration,
                                         options.zero_pad,
                                         raw.t_grid.size(),
                                         raw.omega_t_grid.size(),
                                         raw.frame_phases};
  return result;
}

}  // namespace cforge
