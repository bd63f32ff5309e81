#include "ridgelab/pipeline.h"

#include <optional>

#include "ridgelab/filters.h"
#include "ridgelab/format.h"

namespace ridgelab {

namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kParseError, message);
}

void ExpectNoParams(std::string_view name, std::string_view params,
                    bool has_params) {
  if (has_params) {
    Fail("filter '" + std::string(name) + "' takes no parameters, got '" +
         std::string(params) + "'");
  }
}

PipelineStage ParseStage(std::string_view text,
                         const PipelineDefaults& defaults) {
  text = Trim(text);
  const size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const bool has_params = colon != std::string_view::npos;
  const std::string_view params =
      has_params ? text.substr(colon + 1) : std::string_view();

  PipelineStage stage;
  stage.text = std::string(text);

  if (name == "gaussian") {
    if (!has_params) Fail("gaussian needs a sigma, e.g. gaussian:1.5");
    const double sigma = ParseDouble(params);
    GaussianKernel(sigma);  // validates
    stage.apply = [sigma](const Image& im) { return GaussianBlur(im, sigma); };
  } else if (name == "median") {
    if (!has_params) Fail("median needs a radius, e.g. median:1");
    const int radius = ParseInt(params);
    if (radius < 1) Fail("median radius must be >= 1");
    stage.apply = [radius](const Image& im) {
      return MedianFilter(im, radius);
    };
  } else if (name == "histeq") {
    ExpectNoParams(name, params, has_params);
    stage.apply = [](const Image& im) { return HistogramEqualize(im); };
  } else if (name == "visu") {
    std::optional<double> sigma;
    if (has_params && Trim(params) != "auto") {
      sigma = ParseDouble(params);
      if (*sigma < 0) Fail("visu sigma must be >= 0");
    }
    stage.apply = [sigma](const Image& im) { return VisuShrink(im, sigma); };
  } else if (name == "gabor") {
    ExpectNoParams(name, params, has_params);
    const GaborConfig config = defaults.gabor;
    ValidateGaborConfig(config);
    stage.apply = [config](const Image& im) {
      return GaborEnhance(im, config);
    };
  } else if (name == "wgc") {
    ExpectNoParams(name, params, has_params);
    const GaborConfig config = defaults.gabor;
    ValidateGaborConfig(config);
    stage.apply = [config](const Image& im) {
      return WaveletGaborComposite(im, config);
    };
  } else if (name == "pca") {
    PcaConfig config = defaults.pca;
    if (has_params) {
      const auto fields = SplitString(params, ',');
      if (fields.size() > 2) Fail("pca takes tau[,passes]");
      if (Trim(fields[0]) == "auto") {
        config.tau.reset();
      } else {
        config.tau = ParseDouble(fields[0]);
      }
      if (fields.size() == 2) config.max_passes = ParseInt(fields[1]);
    }
    try {
      ValidatePcaConfig(config);
    } catch (const Error& e) {
      Fail(std::string("pca: ") + e.what());
    }
    stage.apply = [config](const Image& im) { return Denoise(im, config); };
  } else {
    Fail("unknown filter '" + std::string(name) + "'");
  }
  return stage;
}

}  // namespace

Pipeline Pipeline::Parse(std::string_view spec,
                         const PipelineDefaults& defaults) {
  Pipeline pipeline;
  if (Trim(spec).empty()) Fail("empty pipeline");
  for (std::string_view part : SplitString(spec, '|')) {
    if (Trim(part).empty()) Fail("empty pipeline stage in '" + std::string(spec) + "'");
    pipeline.stages_.push_back(ParseStage(part, defaults));
  }
  return pipeline;
}

Image Pipeline::Apply(const Image& image) const {
  Image current = image;
  for (const PipelineStage& stage : stages_) current = stage.apply(current);
  return current;
}

}  // namespace ridgelab
