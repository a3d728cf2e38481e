// coherence-forge - CLI for synthesizing and extracting double-quantum 2D
// electronic spectra under pump-probe geometry.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cforge/commands.hpp"
#include "cforge/errors.hpp"

namespace {

struct CliArgs {
  std::string config;
  std::string out;
  std::string raw;
  std::string two;
  std::string zero;
  std::uint64_t seed = 0;
  bool quiet = false;
};

void add_common_options(CLI::App* sub, CliArgs& args, CLI::Option*& seed_opt) {
  sub->add_option("--config", args.config, "run configuration JSON")->required();
  sub->add_option("--out", args.out, "override the configured output directory");
  seed_opt = sub->add_option("--seed", args.seed, "override the configured seed");
  sub->add_flag("--quiet", args.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence-forge: double-quantum 2D electronic spectroscopy toolkit"};
  app.require_subcommand(1);

  CliArgs args;
  CLI::Option* seed_opt = nullptr;

  CLI::App* synth = app.add_subcommand("synth", "synthesize raw phase-cycled spectrograms");
  CLI::App* extract = app.add_subcommand("extract", "extract 2Q/0Q spectra from raw data");
  CLI::App* analyze = app.add_subcommand("analyze", "detect peaks and match predictions");
  CLI::App* pipeline = app.add_subcommand("pipeline", "synth + extract + analyze");
  for (CLI::App* sub : {synth, extract, analyze, pipeline}) {
    add_common_options(sub, args, seed_opt);
  }
  extract->add_option("--raw", args.raw, "raw spectrogram sidecar (default: <out dir>)");
  analyze->add_option("--two", args.two, "2Q spectrum sidecar (default: <out dir>)");
  analyze->add_option("--zero", args.zero, "0Q spectrum sidecar (default: <out dir>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help
    app.exit(err);
    return 2;
  }

  try {
    cforge::RunConfig config = cforge::load_config(args.config);
    if (!args.out.empty()) config.output_dir = args.out;
    if (seed_opt != nullptr && seed_opt->count() > 0) config.seed = args.seed;

    if (synth->parsed()) return cforge::cmd_synth(config, args.quiet);
    if (extract->parsed()) {
      const auto sidecar = args.raw.empty()
                               ? cforge::raw_sidecar_path(config.output_dir)
                               : std::filesystem::path(args.raw);
      return cforge::cmd_extract(config, sidecar, args.quiet);
    }
    if (analyze->parsed()) {
      const auto two = args.two.empty()
                           ? cforge::spectrum_sidecar_path(config.output_dir,
                                                           cforge::Quantum::TwoQuantum)
                           : std::filesystem::path(args.two);
      const auto zero = args.zero.empty()
                            ? cforge::spectrum_sidecar_path(config.output_dir,
                                                            cforge::Quantum::ZeroQuantum)
                            : std::filesystem::path(args.zero);
      return cforge::cmd_analyze(config, two, zero, args.quiet);
    }
    return cforge::cmd_pipeline(config, args.quiet);
  } catch (const cforge::validation_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const cforge::stage_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
