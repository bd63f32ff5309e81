#include "ridgelab/ridge.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "ridgelab/filters.h"
#include "ridgelab/metrics.h"
#include "ridgelab/wavelet.h"

namespace ridgelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxGaborRadius = 24;

double WrapAngle(double theta) {
  theta = std::fmod(theta, kPi);
  if (theta < 0) theta += kPi;
  if (theta >= kPi) theta -= kPi;
  return theta;
}

double Bilinear(const Image& image, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double ax = x - fx;
  const double ay = y - fy;
  const double top = (1 - ax) * image.clamped(x0, y0) +
                     ax * image.clamped(x0 + 1, y0);
  const double bottom = (1 - ax) * image.clamped(x0, y0 + 1) +
                        ax * image.clamped(x0 + 1, y0 + 1);
  return (1 - ay) * top + ay * bottom;
}

std::optional<double> SignatureFrequency(std::vector<double> signature) {
  const auto [lo, hi] = std::minmax_element(signature.begin(), signature.end());
  if (*hi - *lo < 1e-6) return std::nullopt;

  // [1 2 1] smoothing; symmetric, so peak positions are preserved.
  std::vector<double> smooth(signature.size());
  for (size_t i = 0; i < signature.size(); ++i) {
    const double left = signature[i == 0 ? 0 : i - 1];
    const double right = signature[std::min(i + 1, signature.size() - 1)];
    smooth[i] = 0.25 * left + 0.5 * signature[i] + 0.25 * right;
  }

  std::vector<double> peaks;
  for (size_t k = 1; k + 1 < smooth.size(); ++k) {
    const double prev = smooth[k - 1];
    const double cur = smooth[k];
    const double next = smooth[k + 1];
    if (cur > prev && cur >= next) {
      const double curvature = prev - 2 * cur + next;
      const double offset =
          curvature < 0 ? 0.5 * (prev - next) / curvature : 0.0;
      peaks.push_back(static_cast<double>(k) + offset);
    }
  }
  if (peaks.size() < 2) return std::nullopt;
  const double span = peaks.back() - peaks.front();
  if (span <= 0) return std::nullopt;
  const double frequency = static_cast<double>(peaks.size() - 1) / span;
  if (frequency < kMinRidgeFrequency || frequency > kMaxRidgeFrequency) {
    return std::nullopt;
  }
  return frequency;
}

Image ZeroMeanUnitVariance(const Image& image) {
  double mean = 0.0;
  for (double v : image.pixels()) mean += v;
  mean /= static_cast<double>(image.size());
  double var = 0.0;
  for (double v : image.pixels()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(image.size());
  const double scale = var > 0 ? 1.0 / std::sqrt(var) : 0.0;
  Image out = image;
  for (double& v : out.pixels()) v = (v - mean) * scale;
  return out;
}

}  // namespace

void ValidateGaborConfig(const GaborConfig& config) {
  if (!(config.kx > 0) || !(config.ky > 0) || config.orientation_block <= 0 ||
      config.freq_window <= 0 || !(config.fallback_frequency > 0) ||
      config.orientation_bins < 0) {
    throw Error(ErrorCode::kInvalidConfig, "gabor config values must be positive");
  }
}

OrientationField EstimateOrientation(const Image& image, int block_size) {
  if (block_size < 4) {
    throw Error(ErrorCode::kBlockTooSmall, "orientation block must be >= 4");
  }
  const int w = image.width();
  const int h = image.height();
  OrientationField field;
  field.block_size = block_size;
  field.cols = (w + block_size - 1) / block_size;
  field.rows = (h + block_size - 1) / block_size;
  const size_t blocks = static_cast<size_t>(field.cols) * field.rows;
  std::vector<double> gxx(blocks, 0.0), gyy(blocks, 0.0), gxy(blocks, 0.0);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto p = [&](int dx, int dy) { return image.clamped(x + dx, y + dy); };
      const double gx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) -
                        (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      const double gy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) -
                        (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      const size_t b = static_cast<size_t>(y / block_size) * field.cols +
                       static_cast<size_t>(x / block_size);
      gxx[b] += gx * gx;
      gyy[b] += gy * gy;
      gxy[b] += gx * gy;
    }
  }

  field.angles.resize(blocks);
  field.coherence.resize(blocks);
  for (size_t b = 0; b < blocks; ++b) {
    const double diff = gxx[b] - gyy[b];
    const double cross = 2 * gxy[b];
    const double energy = gxx[b] + gyy[b];
    if (energy <= 0.0) {
      field.angles[b] = 0.0;
      field.coherence[b] = 0.0;
      continue;
    }
    // Ridges are perpendicular to the dominant gradient direction.
    field.angles[b] = WrapAngle(0.5 * std::atan2(cross, diff) + kPi / 2);
    field.coherence[b] =
        std::clamp(std::hypot(diff, cross) / energy, 0.0, 1.0);
  }
  return field;
}

OrientationField QuantizeOrientation(const OrientationField& field, int bins) {
  if (bins <= 0) return field;
  OrientationField out = field;
  const double step = kPi / bins;
  for (double& a : out.angles) a = WrapAngle(std::round(a / step) * step);
  return out;
}

FrequencyMap EstimateRidgeFrequency(const Image& image,
                                    const OrientationField& field,
                                    int freq_window) {
  const int bs = field.block_size;
  if (field.cols != (image.width() + bs - 1) / bs ||
      field.rows != (image.height() + bs - 1) / bs) {
    throw Error(ErrorCode::kDimensionMismatch,
                "orientation field does not match image");
  }
  if (freq_window < 3) {
    throw Error(ErrorCode::kInvalidConfig, "frequency window must be >= 3");
  }
  FrequencyMap map;
  map.cols = field.cols;
  map.rows = field.rows;
  map.frequencies.resize(static_cast<size_t>(map.cols) * map.rows);

  std::vector<double> signature(freq_window);
  for (int by = 0; by < field.rows; ++by) {
    for (int bx = 0; bx < field.cols; ++bx) {
      const double theta = field.angle(bx, by);
      const double cx = bx * bs + (bs - 1) / 2.0;
      const double cy = by * bs + (bs - 1) / 2.0;
      const double nx = -std::sin(theta), ny = std::cos(theta);
      const double rx = std::cos(theta), ry = std::sin(theta);
      for (int k = 0; k < freq_window; ++k) {
        const double t = k - (freq_window - 1) / 2.0;
        double acc = 0.0;
        for (int d = 0; d < bs; ++d) {
          const double s = d - (bs - 1) / 2.0;
          acc += Bilinear(image, cx + t * nx + s * rx, cy + t * ny + s * ry);
        }
        signature[k] = acc / bs;
      }
      map.frequencies[static_cast<size_t>(by) * map.cols + bx] =
          SignatureFrequency(signature);
    }
  }
  return map;
}

double GaborKernel::sum() const {
  double s = 0.0;
  for (double t : taps) s += t;
  return s;
}

GaborKernel MakeGaborKernel(double theta, double frequency, double kx,
                            double ky) {
  const double sigma_x = kx / frequency;
  const double sigma_y = ky / frequency;
  GaborKernel kernel;
  kernel.radius = std::min(
      kMaxGaborRadius,
      static_cast<int>(std::ceil(3.0 * std::max(sigma_x, sigma_y))));
  const int side = 2 * kernel.radius + 1;
  kernel.taps.resize(static_cast<size_t>(side) * side);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double mean = 0.0;
  for (int v = -kernel.radius; v <= kernel.radius; ++v) {
    for (int u = -kernel.radius; u <= kernel.radius; ++u) {
      const double across = -u * s + v * c;  // along the ridge normal
      const double along = u * c + v * s;
      const double value =
          std::cos(2 * kPi * frequency * across) *
          std::exp(-0.5 * (across * across / (sigma_x * sigma_x) +
                           along * along / (sigma_y * sigma_y)));
      kernel.taps[(v + kernel.radius) * side + (u + kernel.radius)] = value;
      mean += value;
    }
  }
  mean /= static_cast<double>(kernel.taps.size());
  for (double& t : kernel.taps) t -= mean;
  return kernel;
}

Image GaborEnhance(const Image& image, const GaborConfig& config) {
  ValidateGaborConfig(config);
  const Image normalized = ZeroMeanUnitVariance(image);
  const OrientationField field = QuantizeOrientation(
      EstimateOrientation(normalized, config.orientation_block),
      config.orientation_bins);
  const FrequencyMap freq =
      EstimateRidgeFrequency(normalized, field, config.freq_window);

  std::vector<GaborKernel> kernels;
  kernels.reserve(field.angles.size());
  for (size_t b = 0; b < field.angles.size(); ++b) {
    const double f = freq.frequencies[b].value_or(config.fallback_frequency);
    kernels.push_back(MakeGaborKernel(field.angles[b], f, config.kx, config.ky));
  }

  const int bs = field.block_size;
  Image response(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const GaborKernel& k =
          kernels[static_cast<size_t>(y / bs) * field.cols + x / bs];
      const int side = 2 * k.radius + 1;
      double acc = 0.0;
      for (int v = -k.radius; v <= k.radius; ++v) {
        const double* row = &k.taps[(v + k.radius) * side];
        for (int u = -k.radius; u <= k.radius; ++u) {
          acc += row[u + k.radius] * normalized.clamped(x - u, y - v);
        }
      }
      response.at(x, y) = acc;
    }
  }

  if (response.max() - response.min() < 1e-9) {
    return Image(image.width(), image.height(), 128.0);
  }
  return NormalizeClip(response, 0.0, 255.0, true);
}

Image WaveletGaborComposite(const Image& image, const GaborConfig& config) {
  const double sigma = EstimateNoiseSigma(image);
  HaarPyramid pyramid = HaarDwt2Padded(image, 1);

  Image& ll = pyramid.approximation;
  const double lo = ll.min();
  const double hi = ll.max();
  const double range = hi - lo;
  if (range > 0) {
    Image scaled = NormalizeClip(ll, 0.0, 255.0, true);
    const Image enhanced = GaborEnhance(scaled, config);
    for (size_t i = 0; i < ll.size(); ++i) {
      ll.pixels()[i] = lo + enhanced.pixels()[i] / 255.0 * range;
    }
  }

  HardThresholdDetails(pyramid, UniversalThreshold(sigma, image.size()));
  return NormalizeClip(HaarIdwt2(pyramid), 0.0, 255.0, false);
}

}  // namespace ridgelab
