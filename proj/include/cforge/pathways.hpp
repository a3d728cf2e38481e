// pathways.hpp - double-sided Feynman pathway enumeration for the
// probe-first pulse ordering under pump-probe phase matching (k_s = k_probe).
//
// The probe always enters non-conjugated on the ket side; exactly one of the
// two pumps contributes its conjugated field. Pump2 conjugated gives the
// two-quantum families (R1, R2) whose field scales as exp[+i(phi1 - phi1')];
// pump1 conjugated gives the zero-quantum families (R3, R4, R5) scaling as
// exp[-i(phi1 - phi1')]. R4/R5 are generalized to inter-excited coherences
// between distinct band-1 levels that share the ground level as a dipole
// partner.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "cforge/level_scheme.hpp"

namespace cforge {

enum class Quantum { TwoQuantum, ZeroQuantum };

enum class Pulse { Probe, Pump1, Pump2 };
enum class Side { Ket, Bra };

struct Interaction {
  Pulse pulse = Pulse::Probe;
  Side side = Side::Ket;
  bool conjugate = false;
  // Transition used, stored as (lower-band id, upper-band id).
  int lower = 0;
  int upper = 0;
};

struct CoherencePair {
  int ket = 0;
  int bra = 0;
  bool population() const { return ket == bra; }
};

struct Pathway {
  std::array<Interaction, 3> interactions;  // probe, pump1, pump2
  std::array<CoherencePair, 3> coherences;  // during tau, T, t
  CoherencePair emission;                   // == coherences[2]
  int sign = 1;                             // (-1)^(bra-side interactions)
  int phase_signature = 1;                  // +1 two-quantum, -1 zero-quantum
  Quantum kind = Quantum::TwoQuantum;
  std::string family;                       // "R1".."R5"

  std::string label(const LevelScheme& scheme) const;
};

// Every self-heterodyne-detectable third-order pathway, deterministic order.
// Dipole amplitudes do not influence the result; a zero-dipole transition
// still defines connectivity.
std::vector<Pathway> enumerate_pathways(const LevelScheme& scheme);

// omega_ket - omega_bra in rad/ps; throws validation_error on unknown ids.
double coherence_omega(const LevelScheme& scheme, CoherencePair pair);

// Dephasing rates (1/ps) for the three intervals. Populations do not dephase;
// coherences without a direct transition (the 2Q pair and inter-excited
// pairs) use the chain rule over the two transitions that created them.
double pathway_tau_gamma(const LevelScheme& scheme, const Pathway& p);
double pathway_t_gamma(const LevelScheme& scheme, const Pathway& p);
double pathway_emission_gamma(const LevelScheme& scheme, const Pathway& p);

// Product over the three interaction transitions and the emission transition.
double dipole_product(const LevelScheme& scheme, const Pathway& p);

// T-oscillation frequency detected at the emission line center:
// omega_Tcoherence - s*omega_rf - omega_emission.
double effective_t_frequency(const LevelScheme& scheme, const Pathway& p, double omega_rf);

const char* to_string(Quantum kind);

}  // namespace cforge
