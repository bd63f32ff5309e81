// Ridge orientation / frequency estimation and Gabor enhancement.
//
// Angles follow image coordinates (x right, y down). A ridge angle theta
// means ridges run along (cos theta, sin theta); intensity oscillates along
// the normal (-sin theta, cos theta).

#ifndef RIDGELAB_RIDGE_H_
#define RIDGELAB_RIDGE_H_

#include <optional>
#include <vector>

#include "ridgelab/image.h"

namespace ridgelab {

struct OrientationField {
  int block_size = 16;
  int cols = 0;
  int rows = 0;
  std::vector<double> angles;     // [0, pi)
  std::vector<double> coherence;  // [0, 1]

  double angle(int bx, int by) const { return angles[by * cols + bx]; }
  double coherence_at(int bx, int by) const { return coherence[by * cols + bx]; }
};

inline constexpr double kMinRidgeFrequency = 1.0 / 25.0;
inline constexpr double kMaxRidgeFrequency = 1.0 / 3.0;

struct FrequencyMap {
  int cols = 0;
  int rows = 0;
  // Empty optional marks an invalid block.
  std::vector<std::optional<double>> frequencies;

  std::optional<double> at(int bx, int by) const {
    return frequencies[by * cols + bx];
  }
};

struct GaborConfig {
  double kx = 0.5;
  double ky = 0.5;
  int orientation_block = 16;
  int freq_window = 32;
  double fallback_frequency = 0.1;
  // 0 keeps continuous angles; otherwise snap to this many bins over [0, pi).
  int orientation_bins = 0;
};

void ValidateGaborConfig(const GaborConfig& config);

// Block-wise gradient (Sobel) orientation with coherence.
OrientationField EstimateOrientation(const Image& image, int block_size);
// Snaps every angle to the nearest multiple of pi / bins.
OrientationField QuantizeOrientation(const OrientationField& field, int bins);

// Peak counting on the x-signature of an oriented window centred on each
// block: frequency = (peaks - 1) / span. Out-of-band estimates are invalid.
FrequencyMap EstimateRidgeFrequency(const Image& image,
                                    const OrientationField& field,
                                    int freq_window = 32);

struct GaborKernel {
  int radius = 0;
  std::vector<double> taps;  // (2 radius + 1)^2, row-major

  double sum() const;
};

// Even-symmetric Gabor kernel with its mean removed (zero DC response).
// Radius is ceil(3 max(sigma_x, sigma_y)) capped at 24.
GaborKernel MakeGaborKernel(double theta, double frequency, double kx,
                            double ky);

Image GaborEnhance(const Image& image, const GaborConfig& config = {});
Image WaveletGaborComposite(const Image& image,
                            const GaborConfig& config = {});

}  // namespace ridgelab

#endif  // RIDGELAB_RIDGE_H_
