// synthesis.hpp - raw heterodyne signal synthesis.
//
// The measured signal for one phase frame (phi1, phi1') at delays (tau, T) is
//
//   S(tau,T,w_t) = 2*Re[ sum_p E_p(tau,T,w_t)
//                        * exp(i*s_p*(phi1 - phi1'))
//                        * exp(i*s_p*w_rf*T)
//                        * exp(i*w_t*(tau + T)) ]
//
// with E_p the bare pathway field (pathway_field below), s_p the phase
// signature, the rotating-frame ramp following the pump that carries the
// non-conjugated (2Q) or conjugated (0Q) field, and a flat local oscillator
// E_2* = 1 across the detection band. Pulses are impulsive; the emission
// lineshape is a complex Lorentzian normalized to unit modulus at line
// center.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cforge/grid.hpp"
#include "cforge/level_scheme.hpp"
#include "cforge/pathways.hpp"

namespace cforge {

struct PhaseFrame {
  double phi1 = 0.0;
  double phi1_prime = 0.0;
};

// The (0,0), (0,pi/2), (0,pi), (0,3pi/2) cycle used by the extraction.
std::vector<PhaseFrame> four_frame_cycle();

struct Contamination {
  bool pfid = false;
  double noise_sigma = 0.0;
};

struct ExperimentPlan {
  double tau = 0.0;                  // ps, probe -> pump1
  std::vector<double> t_grid;        // ps, uniform
  double omega_rf = 0.0;             // rad/ps
  std::vector<PhaseFrame> frames;
  std::vector<double> omega_t_grid;  // rad/ps, uniform
  Contamination contamination;
  std::uint64_t seed = 0;

  double t_step() const;
  double omega_t_step() const;
};

// Throws validation_error naming the first pathway whose detected
// T-oscillation |omega_Tcoh - s*omega_rf - omega_emit| reaches pi/t_step.
void check_nyquist(const LevelScheme& scheme, const std::vector<Pathway>& pathways,
                   double omega_rf, double t_step);

// Full plan validation: uniform strictly-increasing grids, tau >= 0,
// t_grid starting at >= 0, nonempty frame list, noise sigma >= 0, and the
// Nyquist bound above. Returns the plan on success.
ExperimentPlan validated_plan(ExperimentPlan plan, const LevelScheme& scheme,
                              const std::vector<Pathway>& pathways);

struct RawSpectrogram {
  std::vector<Array2D<double>> frames;  // [frame](T index, omega_t index)
  std::vector<PhaseFrame> frame_phases;
  std::vector<double> t_grid;
  std::vector<double> omega_t_grid;
  double tau = 0.0;
};

// Bare pathway field over the detection axis:
//   sign * dipole_product * exp(-(i*w_tau + g_tau)*tau)
//        * exp(-(i*w_T + g_T)*T) * L(w_t),
// L a unit-peak complex Lorentzian at the emission frequency. Rotating-frame,
// phase-cycling and LO factors are applied by synthesize_raw.
std::vector<cplx> pathway_field(const Pathway& pathway, const LevelScheme& scheme,
                                double tau, double T,
                                std::span<const double> omega_t_grid);

// Complex field of one frame before heterodyne detection takes 2*Re.
Array2D<cplx> coherent_frame_field(const LevelScheme& scheme,
                                   const std::vector<Pathway>& pathways,
                                   const ExperimentPlan& plan, PhaseFrame frame);

// Frame-independent perturbed-free-induction-decay contamination: dispersive
// Lorentzians on the ground-connected lines, amplitude decaying as exp(-g*T).
std::vector<double> pfid_spectrum(const LevelScheme& scheme, double T,
                                  std::span<const double> omega_t_grid);

RawSpectrogram synthesize_raw(const LevelScheme& scheme,
                              const std::vector<Pathway>& pathways,
                              const ExperimentPlan& plan);

}  // namespace cforge
