#include "cforge/commands.hpp"

#include <fstream>
#include <iostream>
#include <utility>

#include "cforge/analysis.hpp"
#include "cforge/errors.hpp"
#include "cforge/extraction.hpp"
#include "cforge/io.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json provenance_block(const RunConfig& config, const char* stage, json parameters) {
  return json{{"tool", "coherence-forge"},
              {"config_hash", config.hash()},
              {"stage", stage},
              {"parameters", std::move(parameters)}};
}

void remove_outputs(const std::vector<fs::path>& written) {
  std::error_code ec;
  for (const auto& path : written) fs::remove(path, ec);
}

template <typename Fn>
auto run_stage(const char* stage, std::vector<fs::path>& written, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& err) {
    remove_outputs(written);
    throw stage_error(std::string(stage) + ": " + err.what());
  }
}

struct ModelInputs {
  LevelScheme scheme;
  std::vector<Pathway> pathways;
};

ModelInputs model_from_config(const RunConfig& config) {
  ModelInputs model;
  model.scheme = scheme_from_json(config.scheme_json);
  model.pathways = enumerate_pathways(model.scheme);
  return model;
}

RawSpectrogram synth_stage(const RunConfig& config, const ModelInputs& model,
                           const ExperimentPlan& plan, bool quiet) {
  std::vector<fs::path> written;
  return run_stage("synth", written, [&] {
    RawSpectrogram raw = synthesize_raw(model.scheme, model.pathways, plan);
    const json prov = provenance_block(
        config, "synth",
        json{{"seed", config.seed},
             {"pfid", config.pfid},
             {"noise_sigma", config.noise_sigma},
             {"frames", plan.frames.size()}});
    const fs::path sidecar = write_raw_spectrogram(raw, config.output_dir, prov, written);
    if (!quiet) std::cout << "synth: wrote " << sidecar.string() << "\n";
    return raw;
  });
}

PipelineResult extract_stage(const RunConfig& config, const RawSpectrogram& raw,
                             bool quiet) {
  std::vector<fs::path> written;
  return run_stage("extract", written, [&] {
    PipelineResult result =
        run_pipeline(raw, thz_to_rad_ps(config.omega_rf_thz), config.tau_ps,
                     PipelineOptions{config.zero_pad, thz_to_rad_ps(config.calibration_thz)});
    const json prov = provenance_block(
        config, "extract",
        json{{"omega_rf_thz", config.omega_rf_thz},
             {"tau_ps", config.tau_ps},
             {"zero_pad", config.zero_pad},
             {"calibration_thz", config.calibration_thz}});
    const fs::path two = write_spectrum(result.two_quantum, config.output_dir,
                                        "spectrum_2q", prov, true, written);
    const fs::path zero = write_spectrum(result.zero_quantum, config.output_dir,
                                         "spectrum_0q", prov, true, written);
    if (!quiet) {
      std::cout << "extract: wrote " << two.string() << "\n";
      std::cout << "extract: wrote " << zero.string() << "\n";
    }
    return result;
  });
}

int analyze_stage(const RunConfig& config, const ModelInputs& model,
                  const ComplexSpectrum2D& two, const ComplexSpectrum2D& zero,
                  bool quiet) {
  std::vector<fs::path> written;
  return run_stage("analyze", written, [&] {
    const double tol = thz_to_rad_ps(config.tolerance_thz);
    const double omega_rf = thz_to_rad_ps(config.omega_rf_thz);

    json report_json;
    bool complete = true;
    const std::pair<const ComplexSpectrum2D*, Quantum> channels[] = {
        {&two, Quantum::TwoQuantum}, {&zero, Quantum::ZeroQuantum}};
    for (const auto& [spec, kind] : channels) {
      std::vector<Pathway> subset;
      for (const auto& p : model.pathways) {
        if (p.kind == kind) subset.push_back(p);
      }
      const PeakList predicted = predicted_peaks(model.scheme, subset, omega_rf, true);
      const PeakList found =
          find_peaks(resample_to_uniform(*spec), config.threshold_rel);
      const MatchReport report = match_peaks(found, predicted, tol);
      complete = complete && report.complete();
      report_json[kind == Quantum::TwoQuantum ? "two_quantum" : "zero_quantum"] =
          match_report_json(report);
    }
    report_json["complete"] = complete;
    report_json["provenance"] = provenance_block(
        config, "analyze",
        json{{"threshold_rel", config.threshold_rel},
             {"tolerance_thz", config.tolerance_thz}});

    const fs::path path = match_report_path(config.output_dir);
    fs::create_directories(config.output_dir);
    std::ofstream out(path);
    if (!out) throw stage_error("cannot open for writing: " + path.string());
    out << report_json.dump(2) << "\n";
    out.close();
    written.push_back(path);
    if (!quiet) {
      std::cout << "analyze: wrote " << path.string()
                << (complete ? " (complete)" : " (INCOMPLETE)") << "\n";
    }
    return complete ? 0 : 4;
  });
}

}  // namespace

fs::path raw_sidecar_path(const fs::path& dir) { return dir / "raw_spectrogram.json"; }

fs::path spectrum_sidecar_path(const fs::path& dir, Quantum kind) {
  return dir / (kind == Quantum::TwoQuantum ? "spectrum_2q.json" : "spectrum_0q.json");
}

fs::path match_report_path(const fs::path& dir) { return dir / "match_report.json"; }

int cmd_synth(const RunConfig& config, bool quiet) {
  const ModelInputs model = model_from_config(config);
  const ExperimentPlan plan = plan_from_config(config, model.scheme, model.pathways);
  synth_stage(config, model, plan, quiet);
  return 0;
}

int cmd_extract(const RunConfig& config, const fs::path& raw_sidecar, bool quiet) {
  std::vector<fs::path> written;
  const RawSpectrogram raw = run_stage("extract", written,
                                       [&] { return read_raw_spectrogram(raw_sidecar); });
  extract_stage(config, raw, quiet);
  return 0;
}

int cmd_analyze(const RunConfig& config, const fs::path& two_sidecar,
                const fs::path& zero_sidecar, bool quiet) {
  const ModelInputs model = model_from_config(config);
  std::vector<fs::path> written;
  const auto spectra = run_stage("analyze", written, [&] {
    ComplexSpectrum2D two = read_spectrum(two_sidecar);
    ComplexSpectrum2D zero = read_spectrum(zero_sidecar);
    if (two.kind != Quantum::TwoQuantum || zero.kind != Quantum::ZeroQuantum) {
      throw stage_error("spectrum sidecars do not carry the expected 2Q/0Q kinds");
    }
    return std::pair(std::move(two), std::move(zero));
  });
  return analyze_stage(config, model, spectra.first, spectra.second, quiet);
}

int cmd_pipeline(const RunConfig& config, bool quiet) {
  const ModelInputs model = model_from_config(config);
  const ExperimentPlan plan = plan_from_config(config, model.scheme, model.pathways);
  const RawSpectrogram raw = synth_stage(config, model, plan, quiet);
  const PipelineResult result = extract_stage(config, raw, quiet);
  return analyze_stage(config, model, result.two_quantum, result.zero_quantum, quiet);
}

}  // namespace cforge
