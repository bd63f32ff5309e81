#include "ridgelab/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "ridgelab/format.h"

namespace ridgelab {

namespace {

constexpr std::string_view kSynthPrefix = "synth:";

std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

nlohmann::json JsonNumber(double v) {
  if (std::isinf(v)) return FormatDouble(v);
  return v;
}

nlohmann::json JsonNumber(const std::optional<double>& v) {
  return v ? JsonNumber(*v) : nlohmann::json();
}

}  // namespace

SynthSpec ParseSynthSpec(std::string_view text) {
  const auto fields = SplitString(Trim(text), ':');
  if (fields.size() != 3) {
    throw Error(ErrorCode::kParseError,
                "synthetic spec must be WxH:period:deg, got '" +
                    std::string(text) + "'");
  }
  const auto dims = SplitString(fields[0], 'x');
  if (dims.size() != 2) {
    throw Error(ErrorCode::kParseError, "synthetic dims must be WxH");
  }
  SynthSpec spec;
  spec.width = ParseInt(dims[0]);
  spec.height = ParseInt(dims[1]);
  spec.period = ParseDouble(fields[1]);
  spec.degrees = ParseDouble(fields[2]);
  if (spec.width < 1 || spec.height < 1) {
    throw Error(ErrorCode::kInvalidDimensions, "synthetic dims must be >= 1");
  }
  if (!(spec.period > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "synthetic period must be > 0");
  }
  return spec;
}

Image SynthRidgeReal(const SynthSpec& spec) {
  const double theta = spec.degrees * std::numbers::pi / 180.0;
  const double nx = -std::sin(theta);
  const double ny = std::cos(theta);
  Image out(spec.width, spec.height);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const double phase = 2 * std::numbers::pi * (x * nx + y * ny) / spec.period;
      out.at(x, y) = 128.0 + 100.0 * std::sin(phase);
    }
  }
  return out;
}

Image MakeSynthRidge(const SynthSpec& spec) {
  return Quantize(SynthRidgeReal(spec));
}

BenchConfig ParseBenchConfig(std::string_view text,
                             const PipelineDefaults& defaults) {
  BenchConfig config;
  size_t line_no = 0;
  for (std::string_view line : SplitString(text, '\n')) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t space = line.find_first_of(" \t");
    const std::string_view key = line.substr(0, space);
    const std::string_view value =
        space == std::string_view::npos ? std::string_view()
                                        : Trim(line.substr(space));
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(line_no) + ": " + msg);
    };
    if (value.empty()) fail("missing value for '" + std::string(key) + "'");
    try {
      if (key == "input") {
        if (value.starts_with(kSynthPrefix)) {
          ParseSynthSpec(value.substr(kSynthPrefix.size()));
        }
        config.inputs.emplace_back(value);
      } else if (key == "noise") {
        config.noises.push_back(ParseNoiseSpec(value));
      } else if (key == "pipe") {
        Pipeline::Parse(value, defaults);
        config.pipes.emplace_back(value);
      } else {
        fail("unknown directive '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError &&
          std::string_view(e.what()).starts_with("config line")) {
        throw;
      }
      fail(e.what());
    }
  }
  if (config.inputs.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no inputs");
  }
  if (config.noises.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no noise specs");
  }
  if (config.pipes.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no pipelines");
  }
  return config;
}

BenchConfig LoadBenchConfig(const std::string& path,
                            const PipelineDefaults& defaults) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot read config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  BenchConfig config = ParseBenchConfig(buffer.str(), defaults);
  config.base_dir = std::filesystem::path(path).parent_path().string();
  return config;
}

Image LoadBenchInput(const std::string& input, const std::string& base_dir) {
  if (std::string_view(input).starts_with(kSynthPrefix)) {
    return MakeSynthRidge(ParseSynthSpec(input.substr(kSynthPrefix.size())));
  }
  std::filesystem::path path(input);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  return LoadImage(path.string());
}

int ThreadsFromEnvironment() {
  const char* value = std::getenv("RIDGELAB_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  try {
    return std::max(0, ParseInt(value));
  } catch (const Error&) {
    return 0;
  }
}

BenchResult RunBench(const BenchConfig& config, const BenchOptions& options) {
  struct Cell {
    size_t input;
    size_t noise;
    size_t pipe;
  };
  std::vector<Cell> cells;
  for (size_t i = 0; i < config.inputs.size(); ++i) {
    for (size_t n = 0; n < config.noises.size(); ++n) {
      for (size_t p = 0; p < config.pipes.size(); ++p) cells.push_back({i, n, p});
    }
  }

  // Inputs and noisy fixtures are shared by every pipeline on them.
  std::vector<std::optional<Image>> clean(config.inputs.size());
  std::vector<std::string> input_errors(config.inputs.size());
  for (size_t i = 0; i < config.inputs.size(); ++i) {
    try {
      clean[i] = LoadBenchInput(config.inputs[i], config.base_dir);
    } catch (const std::exception& e) {
      input_errors[i] = e.what();
    }
  }

  std::vector<BenchRow> rows(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t c = next++; c < cells.size(); c = next++) {
      const Cell& cell = cells[c];
      BenchRow& row = rows[c];
      row.input = config.inputs[cell.input];
      row.noise = FormatNoiseSpec(config.noises[cell.noise]);
      row.pipeline = config.pipes[cell.pipe];
      row.seed = config.noises[cell.noise].seed;
      if (!clean[cell.input]) {
        row.error = input_errors[cell.input];
        continue;
      }
      try {
        const Image& reference = *clean[cell.input];
        const Image noisy = ApplyNoise(reference, config.noises[cell.noise]);
        const Pipeline pipeline =
            Pipeline::Parse(row.pipeline, options.defaults);
        const auto start = std::chrono::steady_clock::now();
        const Image out = pipeline.Apply(noisy);
        const auto stop = std::chrono::steady_clock::now();
        row.vs_clean = Evaluate(reference, out, false);
        row.vs_noisy = Evaluate(noisy, out, false);
        if (out.width() >= 2 && out.height() >= 2) {
          row.sigma_hat = EstimateNoiseSigma(out);
        }
        row.vs_clean.sigma_hat = row.sigma_hat;
        if (options.timing) {
          row.ms =
              std::chrono::duration<double, std::milli>(stop - start).count();
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(std::max<size_t>(1, cells.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& a, const BenchRow& b) {
                     return std::tie(a.input, a.noise, a.pipeline) <
                            std::tie(b.input, b.noise, b.pipeline);
                   });
  BenchResult result;
  result.rows = std::move(rows);
  for (const BenchRow& row : result.rows) {
    if (!row.error.empty()) ++result.failures;
  }
  return result;
}

std::string BenchToCsv(const BenchResult& result) {
  const bool with_errors = result.failures > 0;
  std::string out(kBenchCsvHeader);
  if (with_errors) out += ",error";
  out += '\n';
  for (const BenchRow& row : result.rows) {
    const bool ok = row.error.empty();
    auto metric = [ok](double v) { return ok ? FormatDouble(v) : std::string(); };
    out += CsvField(row.input) + ',' + CsvField(row.noise) + ',' +
           CsvField(row.pipeline) + ',' + std::to_string(row.seed) + ',' +
           metric(row.vs_clean.mse) + ',' + metric(row.vs_clean.snr_db) + ',' +
           metric(row.vs_clean.psnr_db) + ',' + metric(row.vs_noisy.mse) + ',' +
           metric(row.vs_noisy.snr_db) + ',' + metric(row.vs_noisy.psnr_db) +
           ',' + OptionalNumber(row.sigma_hat) + ',' + OptionalNumber(row.ms);
    if (with_errors) out += ',' + CsvField(row.error);
    out += '\n';
  }
  return out;
}

std::string BenchToJson(const BenchResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BenchRow& row : result.rows) {
    const bool ok = row.error.empty();
    nlohmann::ordered_json j;
    j["input"] = row.input;
    j["noise"] = row.noise;
    j["pipeline"] = row.pipeline;
    j["seed"] = row.seed;
    j["mse_clean"] = ok ? JsonNumber(row.vs_clean.mse) : nullptr;
    j["snr_clean"] = ok ? JsonNumber(row.vs_clean.snr_db) : nullptr;
    j["psnr_clean"] = ok ? JsonNumber(row.vs_clean.psnr_db) : nullptr;
    j["mse_noisy"] = ok ? JsonNumber(row.vs_noisy.mse) : nullptr;
    j["snr_noisy"] = ok ? JsonNumber(row.vs_noisy.snr_db) : nullptr;
    j["psnr_noisy"] = ok ? JsonNumber(row.vs_noisy.psnr_db) : nullptr;
    j["sigma_hat"] = JsonNumber(row.sigma_hat);
    j["ms"] = JsonNumber(row.ms);
    if (!ok) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return rows.dump(2) + "\n";
}

}  // namespace ridgelab
