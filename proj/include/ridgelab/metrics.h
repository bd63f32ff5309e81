// Quality metrics: MSE, energy-ratio SNR, PSNR and a no-reference noise
// estimate. Infinite results use IEEE infinities; reports print them as
// "inf" / "-inf".

#ifndef RIDGELAB_METRICS_H_
#define RIDGELAB_METRICS_H_

#include <optional>
#include <string>

#include "ridgelab/image.h"

namespace ridgelab {

struct MetricsReport {
  double mse = 0.0;
  double snr_db = 0.0;
  double psnr_db = 0.0;
  std::optional<double> sigma_hat;
};

double Mse(const Image& reference, const Image& test);
// 10 log10(sum ref^2 / sum (ref - test)^2). Zero residual gives +inf; zero
// signal with a nonzero residual gives -inf.
double SnrDb(const Image& reference, const Image& test);
double PsnrDb(const Image& reference, const Image& test);
double PsnrFromMse(double mse);

// median(|HH|) / 0.6745 over the finest diagonal Haar subband.
double EstimateNoiseSigma(const Image& image);

MetricsReport Evaluate(const Image& reference, const Image& test,
                       bool with_sigma = true);

// {"mse":..,"snr_db":..,"psnr_db":..,"sigma_hat":..} on one line.
std::string MetricsToJson(const MetricsReport& report);

}  // namespace ridgelab

#endif  // RIDGELAB_METRICS_H_
