// ridgelab: fingerprint de-noising benchmark CLI.
//
//   ridgelab denoise <in> --pipe <spec> -o <out> [--ref <clean>]
//   ridgelab noise (<in> | --synth WxH:period:deg) --spec kind:param:seed -o <out>
//   ridgelab bench <config> -o <report> [--format csv|json] [--no-timing]
//   ridgelab metrics <reference> <test>
//
// Exit status: 0 success, 1 I/O / parse / failed cells, 2 dimension mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ridgelab/bench.h"
#include "ridgelab/format.h"
#include "ridgelab/image.h"
#include "ridgelab/metrics.h"
#include "ridgelab/noise.h"
#include "ridgelab/pipeline.h"

namespace {

using namespace ridgelab;

constexpr int kExitFailure = 1;
constexpr int kExitDimensionMismatch = 2;

struct PcaFlags {
  std::string tau = "24";
  int passes = 1;
  bool stretch = false;
  bool no_neighbor_check = false;
  int quantize_orient = 0;
};

void AddFilterFlags(CLI::App* cmd, PcaFlags* flags) {
  cmd->add_option("--tau", flags->tau,
                  "PCA homogeneity threshold for bare 'pca' stages, or 'auto'");
  cmd->add_option("--passes", flags->passes, "PCA passes for bare 'pca' stages");
  cmd->add_flag("--stretch", flags->stretch,
                "min-max stretch PCA output instead of clipping");
  cmd->add_flag("--no-neighbor-check", flags->no_neighbor_check,
                "repair every block-flagged pixel without the 8-neighbour test");
  cmd->add_option("--quantize-orient", flags->quantize_orient,
                  "snap Gabor orientations to N bins (16 is typical; 0 = off)");
}

PipelineDefaults MakeDefaults(const PcaFlags& flags) {
  PipelineDefaults defaults;
  if (flags.tau == "auto") {
    defaults.pca.tau.reset();
  } else {
    defaults.pca.tau = ParseDouble(flags.tau);
  }
  defaults.pca.max_passes = flags.passes;
  defaults.pca.stretch_output = flags.stretch;
  defaults.pca.neighbor_check = !flags.no_neighbor_check;
  defaults.gabor.orientation_bins = flags.quantize_orient;
  ValidatePcaConfig(defaults.pca);
  return defaults;
}

std::pair<int, int> ParseDims(const std::string& text) {
  const auto dims = SplitString(text, 'x');
  if (dims.size() != 2) {
    throw Error(ErrorCode::kParseError, "expected WxH, got '" + text + "'");
  }
  return {ParseInt(dims[0]), ParseInt(dims[1])};
}

struct DenoiseArgs {
  std::string input;
  std::string pipe;
  std::string output;
  std::string reference;
  std::string resize;
  PcaFlags flags;
};

int RunDenoise(const DenoiseArgs& args) {
  const Pipeline pipeline = Pipeline::Parse(args.pipe, MakeDefaults(args.flags));
  Image image = LoadImage(args.input);
  if (!args.resize.empty()) {
    const auto [w, h] = ParseDims(args.resize);
    image = ResizeNearest(image, w, h);
  }
  const Image out = pipeline.Apply(image);
  SavePgm(out, args.output);
  if (!args.reference.empty()) {
    const Image reference = LoadImage(args.reference);
    // Scored on what was written to disk.
    const MetricsReport report = Evaluate(reference, Quantize(out));
    std::cout << MetricsToJson(report) << std::endl;
  }
  return 0;
}

struct NoiseArgs {
  std::string input;
  std::string synth;
  std::string spec;
  std::string output;
};

int RunNoise(const NoiseArgs& args) {
  const NoiseSpec spec = ParseNoiseSpec(args.spec);
  if (args.input.empty() == args.synth.empty()) {
    throw Error(ErrorCode::kParseError,
                "give exactly one of an input file or --synth");
  }
  const Image clean = args.synth.empty()
                          ? LoadImage(args.input)
                          : MakeSynthRidge(ParseSynthSpec(args.synth));
  SavePgm(ApplyNoise(clean, spec), args.output);
  return 0;
}

struct BenchArgs {
  std::string config;
  std::string output;
  std::string format = "csv";
  bool no_timing = false;
  PcaFlags flags;
};

int RunBenchCommand(const BenchArgs& args) {
  BenchOptions options;
  options.timing = !args.no_timing;
  options.threads = ThreadsFromEnvironment();
  options.defaults = MakeDefaults(args.flags);
  const BenchConfig config = LoadBenchConfig(args.config, options.defaults);
  const BenchResult result = RunBench(config, options);

  const std::string report =
      args.format == "json" ? BenchToJson(result) : BenchToCsv(result);
  std::ofstream out(args.output, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + args.output);
  out << report;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + args.output);

  if (result.failures > 0) {
    for (const BenchRow& row : result.rows) {
      if (row.error.empty()) continue;
      std::cerr << "failed cell: " << row.input << " / " << row.noise << " / "
                << row.pipeline << ": " << row.error << "\n";
    }
    return kExitFailure;
  }
  return 0;
}

int RunMetrics(const std::string& reference_path, const std::string& test_path) {
  const Image reference = LoadImage(reference_path);
  const Image test = LoadImage(test_path);
  std::cout << MetricsToJson(Evaluate(reference, test)) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fingerprint image de-noising and benchmark tool"};
  app.require_subcommand(1);

  DenoiseArgs denoise;
  auto* denoise_cmd = app.add_subcommand("denoise", "run a filter pipeline");
  denoise_cmd->add_option("input", denoise.input, "input image")->required();
  denoise_cmd->add_option("--pipe", denoise.pipe, "pipeline, e.g. gaussian:1|pca:24,1")
      ->required();
  denoise_cmd->add_option("-o,--output", denoise.output, "output PGM")->required();
  denoise_cmd->add_option("--ref", denoise.reference,
                          "clean reference; prints a JSON metrics line");
  denoise_cmd->add_option("--resize", denoise.resize,
                          "nearest-neighbour resize to WxH before filtering");
  AddFilterFlags(denoise_cmd, &denoise.flags);

  NoiseArgs noise;
  auto* noise_cmd = app.add_subcommand("noise", "inject seeded noise");
  noise_cmd->add_option("input", noise.input, "input image");
  noise_cmd->add_option("--synth", noise.synth,
                        "synthetic ridge fixture WxH:period:deg");
  noise_cmd->add_option("--spec", noise.spec, "noise kind:param:seed")->required();
  noise_cmd->add_option("-o,--output", noise.output, "output PGM")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark config");
  bench_cmd->add_option("config", bench.config, "config file")->required();
  bench_cmd->add_option("-o,--output", bench.output, "report path")->required();
  bench_cmd->add_option("--format", bench.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_flag("--no-timing", bench.no_timing,
                      "omit wall-time so reports are byte-reproducible");
  AddFilterFlags(bench_cmd, &bench.flags);

  std::string metrics_ref, metrics_test;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "print MSE/SNR/PSNR of test vs reference");
  metrics_cmd->add_option("reference", metrics_ref)->required();
  metrics_cmd->add_option("test", metrics_test)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFailure;
  }

  try {
    if (*denoise_cmd) return RunDenoise(denoise);
    if (*noise_cmd) return RunNoise(noise);
    if (*bench_cmd) return RunBenchCommand(bench);
    if (*metrics_cmd) return RunMetrics(metrics_ref, metrics_test);
  } catch (const Error& e) {
    std::cerr << "ridgelab: " << ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return e.code() == ErrorCode::kDimensionMismatch ? kExitDimensionMismatch
                                                     : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "ridgelab: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
