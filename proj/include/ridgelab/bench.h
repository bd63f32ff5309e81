// Benchmark harness: inputs x noise specs x pipelines, scored against the
// clean input and the noisy input.
//
// Config file, one directive per line, '#' starts a comment:
//   input <path | synth:WxH:period:deg>
//   noise <kind:param:seed>
//   pipe  <pipeline grammar>

#ifndef RIDGELAB_BENCH_H_
#define RIDGELAB_BENCH_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ridgelab/image.h"
#include "ridgelab/metrics.h"
#include "ridgelab/noise.h"
#include "ridgelab/pipeline.h"

namespace ridgelab {

// Oriented sinusoid fixture: 128 + 100 sin(2 pi (-x sin t + y cos t) / period),
// quantized. deg is the ridge direction in degrees.
struct SynthSpec {
  int width = 256;
  int height = 256;
  double period = 8.0;
  double degrees = 0.0;
};

// "WxH:period:deg"
SynthSpec ParseSynthSpec(std::string_view text);
// Unquantized generator; MakeSynthRidge quantizes it.
Image SynthRidgeReal(const SynthSpec& spec);
Image MakeSynthRidge(const SynthSpec& spec);

struct BenchConfig {
  std::vector<std::string> inputs;
  std::vector<NoiseSpec> noises;
  std::vector<std::string> pipes;
  // Directory used to resolve relative input paths.
  std::string base_dir;
};

BenchConfig ParseBenchConfig(std::string_view text,
                             const PipelineDefaults& defaults = {});
BenchConfig LoadBenchConfig(const std::string& path,
                            const PipelineDefaults& defaults = {});

// Resolves an "input" directive: synth specs are generated, paths loaded.
Image LoadBenchInput(const std::string& input, const std::string& base_dir);

struct BenchRow {
  std::string input;
  std::string noise;
  std::string pipeline;
  uint64_t seed = 0;
  MetricsReport vs_clean;
  MetricsReport vs_noisy;
  std::optional<double> sigma_hat;
  std::optional<double> ms;
  std::string error;  // empty on success
};

struct BenchOptions {
  bool timing = true;
  // 0 = hardware concurrency.
  int threads = 0;
  PipelineDefaults defaults;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // sorted by (input, noise, pipeline)
  size_t failures = 0;
};

// Thread cap from RIDGELAB_THREADS (0 or unset = auto).
int ThreadsFromEnvironment();

BenchResult RunBench(const BenchConfig& config, const BenchOptions& options);

std::string BenchToCsv(const BenchResult& result);
std::string BenchToJson(const BenchResult& result);

inline constexpr std::string_view kBenchCsvHeader =
    "input,noise,pipeline,seed,mse_clean,snr_clean,psnr_clean,mse_noisy,"
    "snr_noisy,psnr_noisy,sigma_hat,ms";

}  // namespace ridgelab

#endif  // RIDGELAB_BENCH_H_
