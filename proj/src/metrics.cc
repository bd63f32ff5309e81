#include "ridgelab/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "json.hpp"
#include "ridgelab/format.h"
#include "ridgelab/wavelet.h"

namespace ridgelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Median absolute deviation of a standard normal.
constexpr double kMadScale = 0.6745;

void CheckSameDims(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image dimensions differ: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

double ResidualEnergy(const Image& reference, const Image& test) {
  CheckSameDims(reference, test);
  const auto r = reference.pixels();
  const auto t = test.pixels();
  double sum = 0.0;
  for (size_t i = 0; i < r.size(); ++i) {
    const double d = r[i] - t[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

double Mse(const Image& reference, const Image& test) {
  return ResidualEnergy(reference, test) /
         static_cast<double>(reference.size());
}

double SnrDb(const Image& reference, const Image& test) {
  const double noise = ResidualEnergy(reference, test);
  if (noise == 0.0) return kInf;
  double signal = 0.0;
  for (double v : reference.pixels()) signal += v * v;
  if (signal == 0.0) return -kInf;
  return 10.0 * std::log10(signal / noise);
}

double PsnrFromMse(double mse) {
  if (mse == 0.0) return kInf;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double PsnrDb(const Image& reference, const Image& test) {
  return PsnrFromMse(Mse(reference, test));
}

double EstimateNoiseSigma(const Image& image) {
  if (image.width() < 2 || image.height() < 2) {
    throw Error(ErrorCode::kImageTooSmall,
                "noise estimate needs at least 2x2 pixels");
  }
  const HaarPyramid pyramid = HaarDwt2Padded(image, 1);
  const auto hh = pyramid.levels[0].hh.pixels();
  std::vector<double> magnitudes(hh.size());
  std::transform(hh.begin(), hh.end(), magnitudes.begin(),
                 [](double c) { return std::abs(c); });
  const size_t n = magnitudes.size();
  const size_t mid = n / 2;
  std::nth_element(magnitudes.begin(), magnitudes.begin() + mid,
                   magnitudes.end());
  double median = magnitudes[mid];
  if (n % 2 == 0) {
    const double lower =
        *std::max_element(magnitudes.begin(), magnitudes.begin() + mid);
    median = (lower + median) / 2.0;
  }
  return median / kMadScale;
}

MetricsReport Evaluate(const Image& reference, const Image& test,
                       bool with_sigma) {
  MetricsReport report;
  report.mse = Mse(reference, test);
  report.snr_db = SnrDb(reference, test);
  report.psnr_db = PsnrFromMse(report.mse);
  if (with_sigma && test.width() >= 2 && test.height() >= 2) {
    report.sigma_hat = EstimateNoiseSigma(test);
  }
  return report;
}

std::string MetricsToJson(const MetricsReport& report) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return FormatDouble(v);
    return v;
  };
  nlohmann::ordered_json j;
  j["mse"] = number(report.mse);
  j["snr_db"] = number(report.snr_db);
  j["psnr_db"] = number(report.psnr_db);
  j["sigma_hat"] =
      report.sigma_hat ? nlohmann::json(*report.sigma_hat) : nlohmann::json();
  return j.dump();
}

}  // namespace ridgelab
