#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "cforge/analysis.hpp"
#include "cforge/errors.hpp"
#include "cforge/extraction.hpp"
#include "cforge/synthesis.hpp"
#include "cforge/units.hpp"

using namespace cforge;

namespace {

LevelScheme asym_ladder() {
  // omega_fe = 385.5 THz != omega_eg = 377 THz, so R1/R2 and R3/R5 separate.
  LevelScheme scheme;
  scheme.levels = {{0, "g", 0, 0.0},
                   {1, "e", 1, thz_to_rad_ps(377.0)},
                   {2, "f", 2, thz_to_rad_ps(762.5)}};
  scheme.transitions = {{0, 1, 1.0, 0.3}, {1, 2, 0.8, 0.5}};
  return validate_scheme(scheme);
}

ExperimentPlan ladder_plan(const LevelScheme& scheme, const std::vector<Pathway>& pathways,
                           double omega_rf_thz = 380.0) {
  ExperimentPlan plan;
  plan.tau = 0.2;
  plan.t_grid = uniform_axis(0.0, 0.08, 161);
  plan.omega_rf = thz_to_rad_ps(omega_rf_thz);
  plan.frames = four_frame_cycle();
  plan.omega_t_grid =
      uniform_axis(thz_to_rad_ps(368.0), thz_to_rad_ps(24.0 / 511.0), 512);
  return validated_plan(std::move(plan), scheme, pathways);
}

const Pathway& pathway_of(const std::vector<Pathway>& pathways, const std::string& family) {
  for (const auto& p : pathways) {
    if (p.family == family) return p;
  }
  throw std::runtime_error("family not enumerated: " + family);
}

}  // namespace

TEST_CASE("pathway_field at tau = T = 0 is sign * dipole product * Lorentzian") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  const Pathway& r1 = pathway_of(pathways, "R1");

  // grid hitting the emission line center exactly
  const double w_eg = thz_to_rad_ps(377.0);
  auto grid = uniform_axis(w_eg - 50.0, 1.0, 101);
  const auto field = pathway_field(r1, scheme, 0.0, 0.0, grid);
  const double product = 1.0 * 0.8 * 0.8 * 1.0;
  CHECK(field[50].real() == doctest::Approx(product));  // center: L = 1, phase 0
  CHECK(field[50].imag() == doctest::Approx(0.0).epsilon(1e-12));
  // half-width point: |L| = 1/sqrt(2)
  const auto half = pathway_field(r1, scheme, 0.0, 0.0,
                                  std::vector<double>{w_eg + 0.3});
  CHECK(std::abs(half[0]) == doctest::Approx(product / std::sqrt(2.0)));
}

TEST_CASE("pathway_field at T = 0.5 ps decays and advances phase per closed form") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  const Pathway& r1 = pathway_of(pathways, "R1");
  auto grid = uniform_axis(thz_to_rad_ps(370.0), 0.5, 64);

  const auto at0 = pathway_field(r1, scheme, 0.0, 0.0, grid);
  const auto at5 = pathway_field(r1, scheme, 0.0, 0.5, grid);
  const double w_fg = thz_to_rad_ps(762.5);
  const double g_fg = 0.3 + 0.5;
  const cplx expected_ratio =
      std::exp(-g_fg * 0.5) * cplx(std::cos(-w_fg * 0.5), std::sin(-w_fg * 0.5));
  for (std::size_t n = 0; n < grid.size(); ++n) {
    CHECK(std::abs(at5[n] - at0[n] * expected_ratio) < 1e-12 * std::abs(at0[n]));
  }
}

TEST_CASE("pathway_field is zero when all dipoles vanish") {
  LevelScheme scheme = asym_ladder();
  for (auto& tr : scheme.transitions) tr.dipole = 0.0;
  const auto pathways = enumerate_pathways(scheme);
  auto grid = uniform_axis(thz_to_rad_ps(370.0), 0.5, 32);
  for (const auto& p : pathways) {
    for (const auto& v : pathway_field(p, scheme, 0.1, 0.4, grid)) {
      CHECK(v == cplx(0.0, 0.0));
    }
  }
}

TEST_CASE("pathway_field rejects negative delays and unknown levels") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  auto grid = uniform_axis(thz_to_rad_ps(370.0), 0.5, 8);
  CHECK_THROWS_AS(pathway_field(pathways[0], scheme, -0.1, 0.0, grid), validation_error);
  Pathway broken = pathways[0];
  broken.coherences[1] = CoherencePair{99, 0};
  CHECK_THROWS_AS(pathway_field(broken, scheme, 0.0, 0.0, grid), validation_error);
}

TEST_CASE("plan validation rejects Nyquist-violating sampling and names the pathway") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  ExperimentPlan plan;
  plan.tau = 0.0;
  plan.t_grid = uniform_axis(0.0, 0.08, 32);
  plan.omega_rf = thz_to_rad_ps(350.0);  // |eff| up to 35.5 THz >> 6.25 THz
  plan.frames = four_frame_cycle();
  plan.omega_t_grid = uniform_axis(thz_to_rad_ps(368.0), 0.3, 128);
  CHECK_THROWS_WITH_AS(validated_plan(plan, scheme, pathways),
                       doctest::Contains("R1"), validation_error);

  // synthesize_raw re-checks against the pathways it is given
  plan.omega_rf = thz_to_rad_ps(380.0);
  ExperimentPlan good = validated_plan(plan, scheme, pathways);
  good.omega_rf = thz_to_rad_ps(350.0);
  CHECK_THROWS_AS(synthesize_raw(scheme, pathways, good), validation_error);
}

TEST_CASE("frame subtraction (0,0)-(0,pi) doubles the coherent signal") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  ExperimentPlan plan = ladder_plan(scheme, pathways);
  plan.frames = {PhaseFrame{0.0, 0.0}, PhaseFrame{0.0, kTwoPi / 2.0}};
  plan.contamination.pfid = true;
  const RawSpectrogram raw = synthesize_raw(scheme, pathways, plan);

  const Array2D<cplx> coherent =
      coherent_frame_field(scheme, pathways, plan, PhaseFrame{0.0, 0.0});
  double max_abs = 0.0;
  for (const auto& v : coherent.data()) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i < coherent.size(); ++i) {
    const double diff = raw.frames[0].data()[i] - raw.frames[1].data()[i];
    CHECK(std::abs(diff - 4.0 * coherent.data()[i].real()) < 1e-9 * max_abs);
  }
}

TEST_CASE("two-quantum field picks up exp(-i pi/2) between frames (0,0) and (0,pi/2)") {
  const LevelScheme scheme = asym_ladder();
  std::vector<Pathway> twoq;
  for (const auto& p : enumerate_pathways(scheme)) {
    if (p.kind == Quantum::TwoQuantum) twoq.push_back(p);
  }
  const ExperimentPlan plan = ladder_plan(scheme, twoq);
  const auto base = coherent_frame_field(scheme, twoq, plan, PhaseFrame{0.0, 0.0});
  const auto quarter =
      coherent_frame_field(scheme, twoq, plan, PhaseFrame{0.0, kTwoPi / 4.0});
  const cplx rot(std::cos(-kTwoPi / 4.0), std::sin(-kTwoPi / 4.0));
  double max_abs = 0.0;
  for (const auto& v : base.data()) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(std::abs(quarter.data()[i] - base.data()[i] * rot) < 1e-12 * max_abs);
  }
}

TEST_CASE("each pathway's dominant T oscillation sits at its effective frequency") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  REQUIRE(pathways.size() == 5);
  const double w_rf = thz_to_rad_ps(380.0);

  for (const auto& p : pathways) {
    std::vector<Pathway> alone{p};
    ExperimentPlan plan = ladder_plan(scheme, alone);
    plan.frames = {PhaseFrame{0.0, 0.0}};
    const RawSpectrogram raw = synthesize_raw(scheme, alone, plan);

    // column closest to the emission line center
    const double w_emit = coherence_omega(scheme, p.emission);
    std::size_t col = 0;
    for (std::size_t n = 1; n < plan.omega_t_grid.size(); ++n) {
      if (std::abs(plan.omega_t_grid[n] - w_emit) <
          std::abs(plan.omega_t_grid[col] - w_emit)) {
        col = n;
      }
    }
    std::vector<double> trace(plan.t_grid.size());
    for (std::size_t r = 0; r < trace.size(); ++r) trace[r] = raw.frames[0](r, col);

    const double expected = std::abs(effective_t_frequency(scheme, p, w_rf));
    const double measured = dominant_frequency(trace, plan.t_step());
    const double bin = kTwoPi / (plan.t_step() * static_cast<double>(trace.size()));
    CAPTURE(p.family);
    CHECK(std::abs(measured - expected) < bin);
  }
}

TEST_CASE("PFID contamination is identical in every frame and cancels exactly") {
  const LevelScheme scheme = asym_ladder();
  const std::vector<Pathway> none;
  ExperimentPlan plan;
  plan.tau = 0.0;
  plan.t_grid = uniform_axis(0.0, 0.1, 32);
  plan.omega_rf = thz_to_rad_ps(380.0);
  plan.frames = four_frame_cycle();
  plan.omega_t_grid = uniform_axis(thz_to_rad_ps(370.0), 0.4, 256);
  plan.contamination.pfid = true;
  plan = validated_plan(std::move(plan), scheme, none);

  const RawSpectrogram raw = synthesize_raw(scheme, none, plan);
  bool nonzero = false;
  for (double v : raw.frames[0].data()) nonzero = nonzero || v != 0.0;
  CHECK(nonzero);
  for (int f = 1; f < 4; ++f) {
    CHECK(raw.frames[f].data() == raw.frames[0].data());
  }
  const auto [s00, s0pi2] = combine_phase_frames(raw);
  for (double v : s00.data()) CHECK(v == 0.0);
  for (double v : s0pi2.data()) CHECK(v == 0.0);
}

TEST_CASE("empty pathway list with noise off synthesizes an all-zero spectrogram") {
  const LevelScheme scheme = asym_ladder();
  const std::vector<Pathway> none;
  ExperimentPlan plan = ladder_plan(scheme, none);
  const RawSpectrogram raw = synthesize_raw(scheme, none, plan);
  for (const auto& frame : raw.frames) {
    for (double v : frame.data()) CHECK(v == 0.0);
  }
}

TEST_CASE("identical seeds reproduce noisy spectrograms bit for bit") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  ExperimentPlan plan = ladder_plan(scheme, pathways);
  plan.contamination.noise_sigma = 0.1;
  plan.seed = 1234;
  const RawSpectrogram a = synthesize_raw(scheme, pathways, plan);
  const RawSpectrogram b = synthesize_raw(scheme, pathways, plan);
  for (int f = 0; f < 4; ++f) CHECK(a.frames[f].data() == b.frames[f].data());

  plan.seed = 1235;
  const RawSpectrogram c = synthesize_raw(scheme, pathways, plan);
  CHECK(a.frames[0].data() != c.frames[0].data());
}

TEST_CASE("frame differences of pure noise double the variance") {
  const LevelScheme scheme = asym_ladder();
  const std::vector<Pathway> none;
  ExperimentPlan plan;
  plan.tau = 0.0;
  plan.t_grid = uniform_axis(0.0, 0.08, 128);
  plan.omega_rf = thz_to_rad_ps(380.0);
  plan.frames = four_frame_cycle();
  plan.omega_t_grid = uniform_axis(thz_to_rad_ps(370.0), 0.2, 1024);
  plan.contamination.noise_sigma = 1.0;
  plan.seed = 99;
  plan = validated_plan(std::move(plan), scheme, none);

  const RawSpectrogram raw = synthesize_raw(scheme, none, plan);
  const auto [s00, s0pi2] = combine_phase_frames(raw);
  auto variance = [](const Array2D<double>& a) {
    double mean = 0.0;
    for (double v : a.data()) mean += v;
    mean /= static_cast<double>(a.size());
    double var = 0.0;
    for (double v : a.data()) var += (v - mean) * (v - mean);
    return var / static_cast<double>(a.size() - 1);
  };
  // independent unit-variance noise: the difference has variance 2
  CHECK(variance(s00) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(variance(s0pi2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("synthesized samples are finite everywhere") {
  const LevelScheme scheme = asym_ladder();
  const auto pathways = enumerate_pathways(scheme);
  ExperimentPlan plan = ladder_plan(scheme, pathways);
  plan.contamination.pfid = true;
  plan.contamination.noise_sigma = 0.05;
  const RawSpectrogram raw = synthesize_raw(scheme, pathways, plan);
  for (const auto& frame : raw.frames) {
    for (double v : frame.data()) CHECK(std::isfinite(v));
  }
}
