#include "cforge/pathways.hpp"

#include <string>

#include "cforge/errors.hpp"

namespace cforge {

namespace {

const Transition& require_transition(const LevelScheme& scheme, int a, int b) {
  const Transition* tr = scheme.find_transition(a, b);
  if (tr == nullptr) {
    throw validation_error("pathway references missing transition " + std::to_string(a) +
                           "-" + std::to_string(b));
  }
  return *tr;
}

std::string level_name(const LevelScheme& scheme, int id) {
  const Level* lvl = scheme.find_level(id);
  if (lvl != nullptr && !lvl->label.empty()) return lvl->label;
  return "#" + std::to_string(id);
}

int bra_count(const std::array<Interaction, 3>& interactions) {
  int n = 0;
  for (const auto& it : interactions) {
    if (it.side == Side::Bra) ++n;
  }
  return n;
}

Pathway make_pathway(std::string family, Quantum kind,
                     std::array<Interaction, 3> interactions,
                     std::array<CoherencePair, 3> coherences) {
  Pathway p;
  p.interactions = interactions;
  p.coherences = coherences;
  p.emission = coherences[2];
  p.sign = (bra_count(interactions) % 2 == 0) ? 1 : -1;
  p.kind = kind;
  p.phase_signature = (kind == Quantum::TwoQuantum) ? 1 : -1;
  p.family = std::move(family);
  return p;
}

}  // namespace

std::string Pathway::label(const LevelScheme& scheme) const {
  std::string out = family;
  out += "[";
  for (std::size_t i = 0; i < coherences.size(); ++i) {
    if (i > 0) out += "|";
    out += level_name(scheme, coherences[i].ket);
    out += ",";
    out += level_name(scheme, coherences[i].bra);
  }
  out += "]";
  return out;
}

std::vector<Pathway> enumerate_pathways(const LevelScheme& scheme) {
  std::vector<Pathway> out;
  if (scheme.levels.empty() || scheme.transitions.empty()) return out;

  const int g = scheme.ground_id();
  const auto band1 = scheme.band_level_ids(1);
  const auto band2 = scheme.band_level_ids(2);
  auto tr = [&scheme](int a, int b) { return scheme.find_transition(a, b) != nullptr; };

  // Two-quantum: probe and pump1 raise the ket to rho_fg; pump2 conjugated.
  for (int e : band1) {
    if (!tr(g, e)) continue;
    for (int f : band2) {
      if (!tr(e, f)) continue;
      for (int e2 : band1) {
        // R1: pump2 lowers the ket f->e2; emission on e2-g.
        if (tr(f, e2) && tr(g, e2)) {
          out.push_back(make_pathway(
              "R1", Quantum::TwoQuantum,
              {Interaction{Pulse::Probe, Side::Ket, false, g, e},
               Interaction{Pulse::Pump1, Side::Ket, false, e, f},
               Interaction{Pulse::Pump2, Side::Ket, true, e2, f}},
              {CoherencePair{e, g}, CoherencePair{f, g}, CoherencePair{e2, g}}));
        }
        // R2: pump2 raises the bra g->e2; emission on f-e2.
        if (tr(g, e2) && tr(e2, f)) {
          out.push_back(make_pathway(
              "R2", Quantum::TwoQuantum,
              {Interaction{Pulse::Probe, Side::Ket, false, g, e},
               Interaction{Pulse::Pump1, Side::Ket, false, e, f},
               Interaction{Pulse::Pump2, Side::Bra, true, g, e2}},
              {CoherencePair{e, g}, CoherencePair{f, g}, CoherencePair{f, e2}}));
        }
      }
    }
  }

  // Zero-quantum: pump1 conjugated.
  for (int e : band1) {
    if (!tr(g, e)) continue;
    // R3: pump1 lowers the ket back to rho_gg; pump2 re-raises it.
    for (int e2 : band1) {
      if (!tr(g, e2)) continue;
      out.push_back(make_pathway(
          "R3", Quantum::ZeroQuantum,
          {Interaction{Pulse::Probe, Side::Ket, false, g, e},
           Interaction{Pulse::Pump1, Side::Ket, true, g, e},
           Interaction{Pulse::Pump2, Side::Ket, false, g, e2}},
          {CoherencePair{e, g}, CoherencePair{g, g}, CoherencePair{e2, g}}));
    }
    // pump1 raises the bra: rho_{e e1} during T (population when e1 == e).
    for (int e1 : band1) {
      if (!tr(g, e1)) continue;
      // R4: pump2 lowers the bra e1->g; emission on e-g.
      out.push_back(make_pathway(
          "R4", Quantum::ZeroQuantum,
          {Interaction{Pulse::Probe, Side::Ket, false, g, e},
           Interaction{Pulse::Pump1, Side::Bra, true, g, e1},
           Interaction{Pulse::Pump2, Side::Bra, false, g, e1}},
          {CoherencePair{e, g}, CoherencePair{e, e1}, CoherencePair{e, g}}));
      // R5: pump2 raises the ket e->f; emission on f-e1.
      for (int f : band2) {
        if (!tr(e, f) || !tr(e1, f)) continue;
        out.push_back(make_pathway(
            "R5", Quantum::ZeroQuantum,
            {Interaction{Pulse::Probe, Side::Ket, false, g, e},
             Interaction{Pulse::Pump1, Side::Bra, true, g, e1},
             Interaction{Pulse::Pump2, Side::Ket, false, e, f}},
            {CoherencePair{e, g}, CoherencePair{e, e1}, CoherencePair{f, e1}}));
      }
    }
  }

  return out;
}

double coherence_omega(const LevelScheme& scheme, CoherencePair pair) {
  const Level* ket = scheme.find_level(pair.ket);
  const Level* bra = scheme.find_level(pair.bra);
  if (ket == nullptr || bra == nullptr) {
    throw validation_error("unknown level id in pathway coherence");
  }
  return ket->omega - bra->omega;
}

double pathway_tau_gamma(const LevelScheme& scheme, const Pathway& p) {
  const auto& probe = p.interactions[0];
  return require_transition(scheme, probe.lower, probe.upper).gamma;
}

double pathway_t_gamma(const LevelScheme& scheme, const Pathway& p) {
  if (p.coherences[1].population()) return 0.0;
  const auto& first = p.interactions[0];
  const auto& second = p.interactions[1];
  return require_transition(scheme, first.lower, first.upper).gamma +
         require_transition(scheme, second.lower, second.upper).gamma;
}

double pathway_emission_gamma(const LevelScheme& scheme, const Pathway& p) {
  return require_transition(scheme, p.emission.ket, p.emission.bra).gamma;
}

double dipole_product(const LevelScheme& scheme, const Pathway& p) {
  double product = 1.0;
  for (const auto& it : p.interactions) {
    product *= require_transition(scheme, it.lower, it.upper).dipole;
  }
  product *= require_transition(scheme, p.emission.ket, p.emission.bra).dipole;
  return product;
}

double effective_t_frequency(const LevelScheme& scheme, const Pathway& p, double omega_rf) {
  return coherence_omega(scheme, p.coherences[1]) -
         static_cast<double>(p.phase_signature) * omega_rf -
         coherence_omega(scheme, p.emission);
}

const char* to_string(Quantum kind) {
  return kind == Quantum::TwoQuantum ? "2Q" : "0Q";
}

}  // namespace cforge
