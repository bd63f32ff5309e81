// Orthonormal 2-D Haar transform.

#ifndef RIDGELAB_WAVELET_H_
#define RIDGELAB_WAVELET_H_

#include <vector>

#include "ridgelab/image.h"

namespace ridgelab {

// Detail subbands of one decomposition level. Naming is (horizontal filter,
// vertical filter): lh is low-pass along rows and high-pass along columns.
struct HaarLevel {
  Image lh;
  Image hl;
  Image hh;
};

struct HaarPyramid {
  // levels[0] is the finest scale.
  std::vector<HaarLevel> levels;
  Image approximation;
  // Transform dimensions (possibly padded) and the source dimensions that
  // the inverse crops back to.
  int width = 0;
  int height = 0;
  int source_width = 0;
  int source_height = 0;
};

// One 1-D Haar analysis step on a pair.
inline void HaarPair(double x0, double x1, double* approx, double* detail) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  *approx = (x0 + x1) * kInvSqrt2;
  *detail = (x0 - x1) * kInvSqrt2;
}

// Requires width and height divisible by 2^levels (kIndivisibleDims).
HaarPyramid HaarDwt2(const Image& image, int levels);
// Pads by edge replication first and records the source size.
HaarPyramid HaarDwt2Padded(const Image& image, int levels);
Image HaarIdwt2(const HaarPyramid& pyramid);

}  // namespace ridgelab

#endif  // RIDGELAB_WAVELET_H_
