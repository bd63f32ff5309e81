// Classical de-noising baselines: Gaussian smoothing, median filtering,
// histogram equalization and VisuShrink wavelet thresholding.

#ifndef RIDGELAB_FILTERS_H_
#define RIDGELAB_FILTERS_H_

#include <optional>
#include <vector>

#include "ridgelab/image.h"

namespace ridgelab {

// Normalized 1-D Gaussian taps, radius ceil(3 sigma). sigma == 0 yields {1}.
std::vector<double> GaussianKernel(double sigma);
// Separable, edge-replicated.
Image GaussianBlur(const Image& image, double sigma);

// Median over the (2r+1)^2 edge-replicated window.
Image MedianFilter(const Image& image, int radius);

// 256-bin CDF remap of the quantized image:
//   out = round(255 (cdf(v) - cdf_min) / (N - cdf_min)).
// A constant image maps to 0.
Image HistogramEqualize(const Image& image);
// The 256-entry level mapping used by HistogramEqualize.
std::vector<double> EqualizationMapping(const Image& image);

// sigma * sqrt(2 ln N).
double UniversalThreshold(double sigma, size_t pixel_count);

inline constexpr int kVisuShrinkLevels = 3;

struct HaarPyramid;
// Zeroes every detail coefficient with |c| <= threshold; others untouched.
void HardThresholdDetails(HaarPyramid& pyramid, double threshold);

// Hard-thresholds every detail subband of a 3-level Haar pyramid at the
// universal threshold, keeps the approximation and clips to [0, 255].
// No sigma means estimate it from the image.
Image VisuShrink(const Image& image, std::optional<double> sigma);

}  // namespace ridgelab

#endif  // RIDGELAB_FILTERS_H_
