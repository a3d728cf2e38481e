// config.hpp - run configuration.
//
// Configs are JSON; every frequency field is ordinary THz and every time ps,
// converted to the core rad/ps units only when the plan is built. Unknown
// keys are rejected. Defaults are filled at load time so the canonical form
// (and hence the provenance hash) reflects exactly what a run will do.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cforge/synthesis.hpp"

namespace cforge {

struct RunConfig {
  std::filesystem::path config_path;
  std::filesystem::path scheme_path;  // resolved against the config directory
  nlohmann::json scheme_json;         // parsed file content

  // plan
  double tau_ps = 0.0;
  double t_start_ps = 0.0;
  double t_stop_ps = 0.0;
  double t_step_ps = 0.0;
  double omega_rf_thz = 0.0;
  double omega_t_min_thz = 0.0;
  double omega_t_max_thz = 0.0;
  std::size_t omega_t_points = 0;
  std::vector<PhaseFrame> phase_frames;  // radians
  bool pfid = false;
  double noise_sigma = 0.0;

  // pipeline
  std::size_t zero_pad = 4;
  double threshold_rel = 0.05;
  double calibration_thz = 0.0;
  double tolerance_thz = 0.0;  // default: one T-axis bin, 1/(t_stop - t_start)

  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;

  // Semantically meaningful fields (plan, pipeline, seed, scheme content) in
  // sorted-key form; excludes output paths.
  nlohmann::json canonical() const;
  // FNV-1a 64-bit over the canonical form, as 16 hex digits.
  std::string hash() const;
};

RunConfig load_config(const std::filesystem::path& path);

// THz/ps -> rad/ps conversion plus full plan validation for the scheme.
ExperimentPlan plan_from_config(const RunConfig& config, const LevelScheme& scheme,
                                const std::vector<Pathway>& pathways);

}  // namespace cforge
