#include "ridgelab/filters.h"

#include <algorithm>
#include <cmath>

#include "ridgelab/metrics.h"
#include "ridgelab/wavelet.h"

namespace ridgelab {

std::vector<double> GaussianKernel(double sigma) {
  if (sigma < 0 || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kNegativeSigma, "blur sigma must be >= 0");
  }
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[i + radius] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

Image GaussianBlur(const Image& image, double sigma) {
  const std::vector<double> taps = GaussianKernel(sigma);
  if (taps.size() == 1) return image;
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = image.width();
  const int h = image.height();

  Image rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = taps[radius] * image.at(x, y);
      for (int k = 1; k <= radius; ++k) {
        acc += taps[radius + k] * (image.clamped(x - k, y) + image.clamped(x + k, y));
      }
      rows.at(x, y) = acc;
    }
  }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = taps[radius] * rows.at(x, y);
      for (int k = 1; k <= radius; ++k) {
        acc += taps[radius + k] * (rows.clamped(x, y - k) + rows.clamped(x, y + k));
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

Image MedianFilter(const Image& image, int radius) {
  if (radius < 1) {
    throw Error(ErrorCode::kInvalidConfig, "median radius must be >= 1");
  }
  const int side = 2 * radius + 1;
  std::vector<double> window(static_cast<size_t>(side) * side);
  Image out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      size_t n = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          window[n++] = image.clamped(x + dx, y + dy);
        }
      }
      auto mid = window.begin() + window.size() / 2;
      std::nth_element(window.begin(), mid, window.end());
      out.at(x, y) = *mid;
    }
  }
  return out;
}

std::vector<double> EqualizationMapping(const Image& image) {
  std::vector<size_t> histogram(256, 0);
  for (double v : image.pixels()) ++histogram[QuantizeValue(v)];
  const size_t total = image.size();

  std::vector<size_t> cdf(256);
  size_t running = 0;
  for (int i = 0; i < 256; ++i) {
    running += histogram[i];
    cdf[i] = running;
  }
  size_t cdf_min = 0;
  for (int i = 0; i < 256; ++i) {
    if (histogram[i] != 0) {
      cdf_min = cdf[i];
      break;
    }
  }

  std::vector<double> mapping(256, 0.0);
  if (total == cdf_min) return mapping;  // single occupied level
  const double denom = static_cast<double>(total - cdf_min);
  for (int i = 0; i < 256; ++i) {
    const double numer =
        cdf[i] >= cdf_min ? static_cast<double>(cdf[i] - cdf_min) : 0.0;
    mapping[i] = RoundHalfUp(255.0 * numer / denom);
  }
  return mapping;
}

Image HistogramEqualize(const Image& image) {
  const std::vector<double> mapping = EqualizationMapping(image);
  Image out = image;
  for (double& v : out.pixels()) v = mapping[QuantizeValue(v)];
  return out;
}

double UniversalThreshold(double sigma, size_t pixel_count) {
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(pixel_count)));
}

void HardThresholdDetails(HaarPyramid& pyramid, double threshold) {
  auto hard = [threshold](Image& band) {
    for (double& c : band.pixels()) {
      if (std::abs(c) <= threshold) c = 0.0;
    }
  };
  for (HaarLevel& level : pyramid.levels) {
    hard(level.lh);
    hard(level.hl);
    hard(level.hh);
  }
}

Image VisuShrink(const Image& image, std::optional<double> sigma) {
  const double noise_sigma = sigma ? *sigma : EstimateNoiseSigma(image);
  if (noise_sigma < 0 || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::kNegativeSigma, "visu sigma must be >= 0");
  }
  const double threshold = UniversalThreshold(noise_sigma, image.size());
  HaarPyramid pyramid = HaarDwt2Padded(image, kVisuShrinkLevels);
  if (threshold > 0.0) HardThresholdDetails(pyramid, threshold);
  return NormalizeClip(HaarIdwt2(pyramid), 0.0, 255.0, false);
}

}  // namespace ridgelab
