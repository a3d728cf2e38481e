// io.hpp - dataset persistence.
//
// Raw spectrograms: one JSON sidecar plus one CSV per phase frame (rows = T
// index, columns = omega_t index). Spectra: JSON sidecar plus real/imaginary
// CSVs on the resampled uniform grid, with the exact per-column offsets kept
// in the sidecar; an optional modulus CSV serves plotting. All CSV values are
// printed with 17 significant digits so write/read round trips are lossless.

#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"

#include "cforge/analysis.hpp"
#include "cforge/extraction.hpp"
#include "cforge/level_scheme.hpp"
#include "cforge/synthesis.hpp"

namespace cforge {

LevelScheme scheme_from_json(const nlohmann::json& doc);
LevelScheme load_scheme(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const Array2D<double>& data);
Array2D<double> read_csv(const std::filesystem::path& path);

// `written` collects every created file so a failing stage can clean up.
std::filesystem::path write_raw_spectrogram(const RawSpectrogram& raw,
                                            const std::filesystem::path& dir,
                                            const nlohmann::json& provenance,
                                            std::vector<std::filesystem::path>& written);
RawSpectrogram read_raw_spectrogram(const std::filesystem::path& sidecar);

// Resamples internally; `stem` names the files (stem.json, stem_real.csv, ...).
std::filesystem::path write_spectrum(const ComplexSpectrum2D& spec,
                                     const std::filesystem::path& dir,
                                     const std::string& stem,
                                     const nlohmann::json& provenance,
                                     bool modulus_csv,
                                     std::vector<std::filesystem::path>& written);
ComplexSpectrum2D read_spectrum(const std::filesystem::path& sidecar);

nlohmann::json match_report_json(const MatchReport& report);

}  // namespace cforge
