#include "cforge/synthesis.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cforge/errors.hpp"
#include "cforge/parallel.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

cplx polar_unit(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

// Unit-peak complex Lorentzian centered at omega0 with half width gamma.
cplx lorentzian(double omega, double omega0, double gamma) {
  return gamma / cplx(gamma, -(omega - omega0));
}

}  // namespace

std::vector<PhaseFrame> four_frame_cycle() {
  const double half_pi = kTwoPi / 4.0;
  return {PhaseFrame{0.0, 0.0}, PhaseFrame{0.0, half_pi}, PhaseFrame{0.0, 2.0 * half_pi},
          PhaseFrame{0.0, 3.0 * half_pi}};
}

double ExperimentPlan::t_step() const { return axis_step(t_grid, "t_grid"); }

double ExperimentPlan::omega_t_step() const {
  return axis_step(omega_t_grid, "omega_t_grid");
}

void check_nyquist(const LevelScheme& scheme, const std::vector<Pathway>& pathways,
                   double omega_rf, double t_step) {
  const double limit = kTwoPi / 2.0 / t_step;
  for (const auto& p : pathways) {
    const double eff = effective_t_frequency(scheme, p, omega_rf);
    if (std::abs(eff) >= limit) {
      throw validation_error(
          "Nyquist violation: pathway " + p.label(scheme) + " oscillates at " +
          std::to_string(rad_ps_to_thz(std::abs(eff))) + " THz, limit " +
          std::to_string(rad_ps_to_thz(limit)) + " THz for t step " +
          std::to_string(t_step) + " ps");
    }
  }
}

ExperimentPlan validated_plan(ExperimentPlan plan, const LevelScheme& scheme,
                              const std::vector<Pathway>& pathways) {
  if (!(plan.tau >= 0.0) || !std::isfinite(plan.tau)) {
    throw validation_error("plan: tau must be finite and >= 0");
  }
  if (plan.t_grid.empty()) throw validation_error("plan: t_grid empty");
  if (plan.t_grid.size() >= 2) plan.t_step();  // uniformity check
  if (plan.t_grid.front() < 0.0) throw validation_error("plan: t_grid must start at T >= 0");
  plan.omega_t_step();
  if (plan.frames.empty()) throw validation_error("plan: phase frame list empty");
  if (!(plan.contamination.noise_sigma >= 0.0)) {
    throw validation_error("plan: noise sigma must be >= 0");
  }
  if (plan.t_grid.size() >= 2) {
    check_nyquist(scheme, pathways, plan.omega_rf, plan.t_step());
  }
  return plan;
}

std::vector<cplx> pathway_field(const Pathway& pathway, const LevelScheme& scheme,
                                double tau, double T,
                                std::span<const double> omega_t_grid) {
  if (!(tau >= 0.0) || !(T >= 0.0)) {
    throw validation_error("pathway_field: tau and T must be >= 0");
  }
  const double w_tau = coherence_omega(scheme, pathway.coherences[0]);
  const double g_tau = pathway_tau_gamma(scheme, pathway);
  const double w_T = coherence_omega(scheme, pathway.coherences[1]);
  const double g_T = pathway_t_gamma(scheme, pathway);
  const double w_emit = coherence_omega(scheme, pathway.emission);
  const double g_emit = pathway_emission_gamma(scheme, pathway);

  const cplx amplitude = static_cast<double>(pathway.sign) *
                         dipole_product(scheme, pathway) *
                         std::exp(-g_tau * tau) * polar_unit(-w_tau * tau) *
                         std::exp(-g_T * T) * polar_unit(-w_T * T);

  std::vector<cplx> field(omega_t_grid.size());
  for (std::size_t n = 0; n < omega_t_grid.size(); ++n) {
    field[n] = amplitude * lorentzian(omega_t_grid[n], w_emit, g_emit);
  }
  return field;
}

Array2D<cplx> coherent_frame_field(const LevelScheme& scheme,
                                   const std::vector<Pathway>& pathways,
                                   const ExperimentPlan& plan, PhaseFrame frame) {
  const std::size_t n_t = plan.t_grid.size();
  const std::size_t n_w = plan.omega_t_grid.size();
  Array2D<cplx> out(n_t, n_w, cplx(0.0, 0.0));

  struct Term {
    cplx base;      // sign * dipoles * tau factors * phase-cycling factor
    double w_T;     // T-coherence frequency minus s*omega_rf
    double g_T;
    std::vector<cplx> line;  // Lorentzian over omega_t
  };
  std::vector<Term> terms;
  terms.reserve(pathways.size());
  for (const auto& p : pathways) {
    Term term;
    const double s = static_cast<double>(p.phase_signature);
    const double w_tau = coherence_omega(scheme, p.coherences[0]);
    const double g_tau = pathway_tau_gamma(scheme, p);
    term.base = static_cast<double>(p.sign) * dipole_product(scheme, p) *
                std::exp(-g_tau * plan.tau) * polar_unit(-w_tau * plan.tau) *
                polar_unit(s * (frame.phi1 - frame.phi1_prime));
    term.w_T = coherence_omega(scheme, p.coherences[1]) - s * plan.omega_rf;
    term.g_T = pathway_t_gamma(scheme, p);
    const double w_emit = coherence_omega(scheme, p.emission);
    const double g_emit = pathway_emission_gamma(scheme, p);
    term.line.resize(n_w);
    for (std::size_t n = 0; n < n_w; ++n) {
      term.line[n] = lorentzian(plan.omega_t_grid[n], w_emit, g_emit);
    }
    terms.push_back(std::move(term));
  }

  parallel_for(n_t, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const double T = plan.t_grid[r];
      cplx* row = out.row(r);
      for (const auto& term : terms) {
        const cplx coeff =
            term.base * std::exp(-term.g_T * T) * polar_unit(-term.w_T * T);
        for (std::size_t n = 0; n < n_w; ++n) row[n] += coeff * term.line[n];
      }
      const double delay = plan.tau + T;
      for (std::size_t n = 0; n < n_w; ++n) {
        row[n] *= polar_unit(plan.omega_t_grid[n] * delay);
      }
    }
  });
  return out;
}

std::vector<double> pfid_spectrum(const LevelScheme& scheme, double T,
                                  std::span<const double> omega_t_grid) {
  std::vector<double> out(omega_t_grid.size(), 0.0);
  const int ground = scheme.ground_id();
  for (const auto& tr : scheme.transitions) {
    if (tr.lower != ground) continue;
    const Level* upper = scheme.find_level(tr.upper);
    const double w0 = upper->omega;
    const double amp = tr.dipole * tr.dipole * std::exp(-tr.gamma * T);
    for (std::size_t n = 0; n < out.size(); ++n) {
      const double d = omega_t_grid[n] - w0;
      out[n] += amp * tr.gamma * d / (tr.gamma * tr.gamma + d * d);
    }
  }
  return out;
}

RawSpectrogram synthesize_raw(const LevelScheme& scheme,
                              const std::vector<Pathway>& pathways,
                              const ExperimentPlan& plan) {
  if (plan.t_grid.size() >= 2) {
    check_nyquist(scheme, pathways, plan.omega_rf, plan.t_step());
  }
  const std::size_t n_t = plan.t_grid.size();
  const std::size_t n_w = plan.omega_t_grid.size();

  RawSpectrogram raw;
  raw.frame_phases = plan.frames;
  raw.t_grid = plan.t_grid;
  raw.omega_t_grid = plan.omega_t_grid;
  raw.tau = plan.tau;
  raw.frames.reserve(plan.frames.size());

  for (const auto& frame : plan.frames) {
    const Array2D<cplx> field = coherent_frame_field(scheme, pathways, plan, frame);
    Array2D<double> data(n_t, n_w);
    for (std::size_t i = 0; i < field.size(); ++i) {
      data.data()[i] = 2.0 * field.data()[i].real();
    }
    raw.frames.push_back(std::move(data));
  }

  if (plan.contamination.pfid) {
    for (std::size_t r = 0; r < n_t; ++r) {
      const std::vector<double> pfid =
          pfid_spectrum(scheme, plan.t_grid[r], plan.omega_t_grid);
      for (auto& frame : raw.frames) {
        double* row = frame.row(r);
        for (std::size_t n = 0; n < n_w; ++n) row[n] += pfid[n];
      }
    }
  }

  if (plan.contamination.noise_sigma > 0.0) {
    std::mt19937_64 rng(plan.seed);
    std::normal_distribution<double> gauss(0.0, plan.contamination.noise_sigma);
    for (auto& frame : raw.frames) {
      for (auto& sample : frame.data()) sample += gauss(rng);
    }
  }

  return raw;
}

}  // namespace cforge
