#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cforge/errors.hpp"
#include "cforge/level_scheme.hpp"
#include "cforge/pathways.hpp"
#include "cforge/units.hpp"

using namespace cforge;

namespace {

LevelScheme three_level_ladder() {
  LevelScheme scheme;
  scheme.levels = {{0, "g", 0, 0.0},
                   {1, "e", 1, thz_to_rad_ps(384.2)},
                   {2, "f", 2, thz_to_rad_ps(770.5)}};
  scheme.transitions = {{0, 1, 1.0, 0.3}, {1, 2, 0.8, 0.5}};
  return scheme;
}

LevelScheme rb_demo_scheme() {
  LevelScheme scheme;
  scheme.levels = {{0, "g", 0, 0.0},
                   {1, "D1", 1, thz_to_rad_ps(377.1)},
                   {2, "D2", 1, thz_to_rad_ps(384.2)},
                   {3, "D1+D1", 2, thz_to_rad_ps(754.2)},
                   {4, "D1+D2", 2, thz_to_rad_ps(761.3)},
                   {5, "D2+D2", 2, thz_to_rad_ps(768.4)},
                   {6, "5D", 2, thz_to_rad_ps(770.5)}};
  scheme.transitions = {{0, 1, 1.0, 0.25}, {0, 2, 1.0, 0.25}, {1, 3, 0.8, 0.45},
                        {1, 4, 0.7, 0.45}, {2, 4, 0.5, 0.45}, {2, 5, 0.8, 0.45},
                        {2, 6, 0.9, 0.45}};
  return scheme;
}

// Canonical fingerprint of a pathway for set comparison against the oracle.
using Fingerprint = std::tuple<int, int, int,  // interaction sides (0 ket / 1 bra)
                               int, int, int,  // conjugate flags
                               int, int,       // tau coherence (ket, bra)
                               int, int,       // T coherence
                               int, int>;      // emission

Fingerprint fingerprint(const Pathway& p) {
  auto side = [](const Interaction& i) { return i.side == Side::Bra ? 1 : 0; };
  auto conj = [](const Interaction& i) { return i.conjugate ? 1 : 0; };
  return {side(p.interactions[0]), side(p.interactions[1]), side(p.interactions[2]),
          conj(p.interactions[0]), conj(p.interactions[1]), conj(p.interactions[2]),
          p.coherences[0].ket,     p.coherences[0].bra,     p.coherences[1].ket,
          p.coherences[1].bra,     p.coherences[2].ket,     p.coherences[2].bra};
}

// Independent brute-force enumerator: walk the density matrix from rho_gg
// through all side/conjugate/level assignments of the three pulses, keep the
// walks that satisfy phase matching k_s = k_probe and end in a coherence that
// can radiate (dipole-allowed, ket one band above bra).
std::set<Fingerprint> brute_force_pathways(const LevelScheme& scheme) {
  std::set<Fingerprint> out;
  const int ground = scheme.ground_id();
  auto allowed = [&](int a, int b) { return scheme.find_transition(a, b) != nullptr; };
  auto band = [&](int id) { return scheme.find_level(id)->band; };

  struct State {
    int ket, bra;
  };
  auto moves = [&](State s, int side, int conj) {
    std::vector<State> next;
    for (const auto& lvl : scheme.levels) {
      const int target = lvl.id;
      if (side == 0) {  // ket: plain field raises, conjugated field lowers
        const bool raise = conj == 0;
        if (raise && band(target) == band(s.ket) + 1 && allowed(s.ket, target)) {
          next.push_back({target, s.bra});
        }
        if (!raise && band(target) == band(s.ket) - 1 && allowed(target, s.ket)) {
          next.push_back({target, s.bra});
        }
      } else {  // bra: conjugated field raises, plain field lowers
        const bool raise = conj == 1;
        if (raise && band(target) == band(s.bra) + 1 && allowed(s.bra, target)) {
          next.push_back({s.ket, target});
        }
        if (!raise && band(target) == band(s.bra) - 1 && allowed(target, s.bra)) {
          next.push_back({s.ket, target});
        }
      }
    }
    return next;
  };

  for (int side0 = 0; side0 < 2; ++side0)
    for (int conj0 = 0; conj0 < 2; ++conj0)
      for (int side1 = 0; side1 < 2; ++side1)
        for (int conj1 = 0; conj1 < 2; ++conj1)
          for (int side2 = 0; side2 < 2; ++side2)
            for (int conj2 = 0; conj2 < 2; ++conj2) {
              // k_s = k_probe: probe plain, pumps with opposite signs
              if (conj0 != 0 || conj1 == conj2) continue;
              for (State s1 : moves({ground, ground}, side0, conj0))
                for (State s2 : moves(s1, side1, conj1))
                  for (State s3 : moves(s2, side2, conj2)) {
                    if (band(s3.ket) != band(s3.bra) + 1) continue;
                    if (!allowed(s3.bra, s3.ket)) continue;
                    out.insert({side0, side1, side2, conj0, conj1, conj2, s1.ket,
                                s1.bra, s2.ket, s2.bra, s3.ket, s3.bra});
                  }
            }
  return out;
}

}  // namespace

TEST_CASE("validate_scheme accepts the demo schemes") {
  CHECK_NOTHROW(validate_scheme(three_level_ladder()));
  CHECK_NOTHROW(validate_scheme(rb_demo_scheme()));
}

TEST_CASE("validate_scheme rejects a transition skipping a band") {
  LevelScheme scheme = three_level_ladder();
  scheme.transitions.push_back({0, 2, 0.5, 0.3});
  CHECK_THROWS_AS(validate_scheme(scheme), validation_error);
}

TEST_CASE("empty transition list is a valid scheme with no pathways") {
  LevelScheme scheme = three_level_ladder();
  scheme.transitions.clear();
  CHECK_NOTHROW(validate_scheme(scheme));
  CHECK(enumerate_pathways(scheme).empty());
}

TEST_CASE("validate_scheme names the violated invariant") {
  LevelScheme no_ground = three_level_ladder();
  no_ground.levels[0].band = 1;
  no_ground.levels[0].omega = 1.0;
  CHECK_THROWS_WITH_AS(validate_scheme(no_ground),
                       doctest::Contains("exactly one band-0 level"), validation_error);

  LevelScheme bad_gamma = three_level_ladder();
  bad_gamma.transitions[0].gamma = 0.0;
  CHECK_THROWS_WITH_AS(validate_scheme(bad_gamma), doctest::Contains("gamma"),
                       validation_error);

  LevelScheme negative_dipole = three_level_ladder();
  negative_dipole.transitions[1].dipole = -0.1;
  CHECK_THROWS_AS(validate_scheme(negative_dipole), validation_error);

  LevelScheme dup_id = three_level_ladder();
  dup_id.levels.push_back({1, "dup", 1, 5.0});
  CHECK_THROWS_AS(validate_scheme(dup_id), validation_error);

  LevelScheme shifted_ground = three_level_ladder();
  shifted_ground.levels[0].omega = 0.5;
  CHECK_THROWS_AS(validate_scheme(shifted_ground), validation_error);
}

TEST_CASE("three-level ladder yields 2 two-quantum and 3 zero-quantum pathways") {
  const auto pathways = enumerate_pathways(three_level_ladder());
  int twoq = 0, zeroq = 0;
  for (const auto& p : pathways) {
    (p.kind == Quantum::TwoQuantum ? twoq : zeroq) += 1;
  }
  CHECK(twoq == 2);
  CHECK(zeroq == 3);
}

TEST_CASE("a two-level system keeps only R3 and R4") {
  LevelScheme scheme;
  scheme.levels = {{0, "g", 0, 0.0}, {1, "e", 1, thz_to_rad_ps(380.0)}};
  scheme.transitions = {{0, 1, 1.0, 0.3}};
  const auto pathways = enumerate_pathways(validate_scheme(scheme));
  REQUIRE(pathways.size() == 2);
  std::set<std::string> families;
  for (const auto& p : pathways) {
    families.insert(p.family);
    CHECK(p.kind == Quantum::ZeroQuantum);
  }
  CHECK(families == std::set<std::string>{"R3", "R4"});
}

TEST_CASE("enumeration agrees with the brute-force walker") {
  for (const LevelScheme& scheme : {three_level_ladder(), rb_demo_scheme()}) {
    const auto pathways = enumerate_pathways(scheme);
    std::set<Fingerprint> ours;
    for (const auto& p : pathways) ours.insert(fingerprint(p));
    CHECK(ours.size() == pathways.size());  // no duplicates
    CHECK(ours == brute_force_pathways(scheme));
  }
}

TEST_CASE("pathway class, phase signature and T-coherence bands are consistent") {
  const LevelScheme scheme = rb_demo_scheme();
  for (const auto& p : enumerate_pathways(scheme)) {
    const int ket_band = scheme.find_level(p.coherences[1].ket)->band;
    const int bra_band = scheme.find_level(p.coherences[1].bra)->band;
    if (p.kind == Quantum::TwoQuantum) {
      CHECK(p.phase_signature == 1);
      CHECK(((ket_band == 2 && bra_band == 0) || (ket_band == 0 && bra_band == 2)));
    } else {
      CHECK(p.phase_signature == -1);
      CHECK(ket_band == bra_band);
    }
    int conj_pumps = 0;
    for (const auto& it : p.interactions) {
      if (it.pulse != Pulse::Probe && it.conjugate) ++conj_pumps;
    }
    CHECK(conj_pumps == 1);
    CHECK_FALSE(p.interactions[0].conjugate);
    CHECK(p.emission.ket == p.coherences[2].ket);
    CHECK(p.emission.bra == p.coherences[2].bra);
  }
}

TEST_CASE("enumeration is deterministic and ignores dipole amplitudes") {
  const LevelScheme scheme = rb_demo_scheme();
  const auto first = enumerate_pathways(scheme);
  const auto second = enumerate_pathways(scheme);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(fingerprint(first[i]) == fingerprint(second[i]));
  }

  LevelScheme doubled = scheme;
  for (auto& tr : doubled.transitions) tr.dipole *= 2.0;
  const auto third = enumerate_pathways(doubled);
  REQUIRE(third.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(fingerprint(first[i]) == fingerprint(third[i]));
  }
}

TEST_CASE("interval frequencies and dephasing rates follow the level model") {
  const LevelScheme scheme = three_level_ladder();
  const auto pathways = enumerate_pathways(scheme);
  const double w_eg = thz_to_rad_ps(384.2);
  const double w_fg = thz_to_rad_ps(770.5);
  const double w_rf = thz_to_rad_ps(380.9);

  for (const auto& p : pathways) {
    CHECK(coherence_omega(scheme, p.coherences[0]) == doctest::Approx(w_eg));
    CHECK(pathway_tau_gamma(scheme, p) == doctest::Approx(0.3));
    const double eff = effective_t_frequency(scheme, p, w_rf);
    if (p.family == "R1") {
      CHECK(coherence_omega(scheme, p.coherences[1]) == doctest::Approx(w_fg));
      CHECK(pathway_t_gamma(scheme, p) == doctest::Approx(0.8));
      CHECK(pathway_emission_gamma(scheme, p) == doctest::Approx(0.3));
      CHECK(dipole_product(scheme, p) == doctest::Approx(1.0 * 0.8 * 0.8 * 1.0));
      CHECK(eff == doctest::Approx((w_fg - w_eg) - w_rf));
      CHECK(p.sign == 1);
    } else if (p.family == "R2") {
      CHECK(pathway_emission_gamma(scheme, p) == doctest::Approx(0.5));
      CHECK(eff == doctest::Approx(w_eg - w_rf));
      CHECK(p.sign == -1);
    } else if (p.family == "R3" || p.family == "R4") {
      CHECK(coherence_omega(scheme, p.coherences[1]) == doctest::Approx(0.0));
      CHECK(pathway_t_gamma(scheme, p) == doctest::Approx(0.0));
      CHECK(eff == doctest::Approx(w_rf - w_eg));
      CHECK(p.sign == 1);
    } else if (p.family == "R5") {
      CHECK(eff == doctest::Approx(w_rf - (w_fg - w_eg)));
      CHECK(p.sign == -1);
    }
  }
}

TEST_CASE("inter-excited coherences appear exactly for ground-sharing band-1 pairs") {
  const LevelScheme scheme = rb_demo_scheme();
  int inter_excited = 0;
  for (const auto& p : enumerate_pathways(scheme)) {
    if (p.kind == Quantum::ZeroQuantum && !p.coherences[1].population() &&
        scheme.find_level(p.coherences[1].ket)->band == 1) {
      ++inter_excited;
      const double delta = coherence_omega(scheme, p.coherences[1]);
      CHECK(std::abs(rad_ps_to_thz(std::abs(delta)) - 7.1) < 1e-9);
      CHECK(pathway_t_gamma(scheme, p) == doctest::Approx(0.5));
    }
  }
  // R4 for (D1,D2) and (D2,D1), plus one admissible R5 completion each.
  CHECK(inter_excited == 4);
}

TEST_CASE("coherence_omega rejects unknown level ids") {
  const LevelScheme scheme = three_level_ladder();
  CHECK_THROWS_AS(coherence_omega(scheme, CoherencePair{42, 0}), validation_error);
}
