#include "ridgelab/wavelet.h"

#include <string>

namespace ridgelab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Rows first, then columns.
HaarLevel AnalyzeLevel(const Image& input, Image* approx) {
  const int w = input.width();
  const int h = input.height();
  const int hw = w / 2;
  const int hh = h / 2;

  Image low(hw, h), high(hw, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < hw; ++x) {
      double a, d;
      HaarPair(input.at(2 * x, y), input.at(2 * x + 1, y), &a, &d);
      low.at(x, y) = a;
      high.at(x, y) = d;
    }
  }

  HaarLevel level{Image(hw, hh), Image(hw, hh), Image(hw, hh)};
  *approx = Image(hw, hh);
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      double a, d;
      HaarPair(low.at(x, 2 * y), low.at(x, 2 * y + 1), &a, &d);
      approx->at(x, y) = a;
      level.lh.at(x, y) = d;
      HaarPair(high.at(x, 2 * y), high.at(x, 2 * y + 1), &a, &d);
      level.hl.at(x, y) = a;
      level.hh.at(x, y) = d;
    }
  }
  return level;
}

Image SynthesizeLevel(const Image& approx, const HaarLevel& level) {
  const int hw = approx.width();
  const int hh = approx.height();
  Image low(hw, 2 * hh), high(hw, 2 * hh);
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double a = approx.at(x, y);
      const double lh = level.lh.at(x, y);
      low.at(x, 2 * y) = (a + lh) * kInvSqrt2;
      low.at(x, 2 * y + 1) = (a - lh) * kInvSqrt2;
      const double hl = level.hl.at(x, y);
      const double d = level.hh.at(x, y);
      high.at(x, 2 * y) = (hl + d) * kInvSqrt2;
      high.at(x, 2 * y + 1) = (hl - d) * kInvSqrt2;
    }
  }
  Image out(2 * hw, 2 * hh);
  for (int y = 0; y < 2 * hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double a = low.at(x, y);
      const double d = high.at(x, y);
      out.at(2 * x, y) = (a + d) * kInvSqrt2;
      out.at(2 * x + 1, y) = (a - d) * kInvSqrt2;
    }
  }
  return out;
}

}  // namespace

HaarPyramid HaarDwt2(const Image& image, int levels) {
  if (levels < 1) {
    throw Error(ErrorCode::kInvalidConfig, "haar levels must be >= 1");
  }
  const int block = 1 << levels;
  if (image.width() % block != 0 || image.height() % block != 0) {
    throw Error(ErrorCode::kIndivisibleDims,
                "image dims must be divisible by 2^" + std::to_string(levels));
  }
  HaarPyramid pyramid;
  pyramid.width = pyramid.source_width = image.width();
  pyramid.height = pyramid.source_height = image.height();
  Image current = image;
  for (int i = 0; i < levels; ++i) {
    Image approx;
    pyramid.levels.push_back(AnalyzeLevel(current, &approx));
    current = std::move(approx);
  }
  pyramid.approximation = std::move(current);
  return pyramid;
}

HaarPyramid HaarDwt2Padded(const Image& image, int levels) {
  const int block = 1 << levels;
  HaarPyramid pyramid = HaarDwt2(PadReplicate(image, block, block), levels);
  pyramid.source_width = image.width();
  pyramid.source_height = image.height();
  return pyramid;
}

Image HaarIdwt2(const HaarPyramid& pyramid) {
  Image current = pyramid.approximation;
  for (auto it = pyramid.levels.rbegin(); it != pyramid.levels.rend(); ++it) {
    current = SynthesizeLevel(current, *it);
  }
  return Crop(current, pyramid.source_width, pyramid.source_height);
}

}  // namespace ridgelab
