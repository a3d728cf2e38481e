// commands.hpp - subcommand implementations behind the CLI front end.
//
// Each command validates its inputs (throwing validation_error), then runs
// its stages; anything thrown inside a stage is re-raised as a stage_error
// prefixed with the stage name after partially written outputs have been
// removed. Return values: 0 success, 4 incomplete peak match.

#pragma once

#include <filesystem>

#include "cforge/config.hpp"
#include "cforge/pathways.hpp"

namespace cforge {

std::filesystem::path raw_sidecar_path(const std::filesystem::path& dir);
std::filesystem::path spectrum_sidecar_path(const std::filesystem::path& dir, Quantum kind);
std::filesystem::path match_report_path(const std::filesystem::path& dir);

int cmd_synth(const RunConfig& config, bool quiet);
int cmd_extract(const RunConfig& config, const std::filesystem::path& raw_sidecar,
                bool quiet);
int cmd_analyze(const RunConfig& config, const std::filesystem::path& two_sidecar,
                const std::filesystem::path& zero_sidecar, bool quiet);
int cmd_pipeline(const RunConfig& config, bool quiet);

}  // namespace cforge
