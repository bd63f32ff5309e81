// Grayscale image container, PGM/PNG codecs and intensity preprocessing.

#ifndef RIDGELAB_IMAGE_H_
#define RIDGELAB_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ridgelab {

enum class ErrorCode {
  kFileNotFound,
  kUnsupportedFormat,
  kMalformedHeader,
  kIoError,
  kInvalidDimensions,
  kInvalidRange,
  kNegativeSigma,
  kNegativeVariance,
  kDensityOutOfRange,
  kDimensionMismatch,
  kImageTooSmall,
  kIndivisibleDims,
  kBlockTooSmall,
  kInvalidConfig,
  kParseError,
};

const char* ErrorCodeName(ErrorCode code);

// Every library failure is reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Row-major grid of real-valued intensities. The canonical range is
// [0, 255]; values are only quantized when written to disk.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0);
  Image(int width, int height, std::vector<double> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double& at(int x, int y) { return pixels_[Index(x, y)]; }
  double at(int x, int y) const { return pixels_[Index(x, y)]; }
  // Edge-replicated access for coordinates outside the image.
  double clamped(int x, int y) const;

  std::span<double> pixels() { return pixels_; }
  std::span<const double> pixels() const { return pixels_; }

  double min() const;
  double max() const;

  bool operator==(const Image& other) const = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * static_cast<size_t>(width_) +
           static_cast<size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // interleaved R, G, B
};

// floor(v + 0.5); the single rounding rule used throughout the project.
double RoundHalfUp(double v);

// Round half-up then clip to [0, 255].
uint8_t QuantizeValue(double v);
Image Quantize(const Image& image);
bool IsQuantized(const Image& image);

// Reads binary/ASCII PGM (P5/P2) or 8-bit gray/RGB PNG.
Image LoadImage(const std::string& path);
// Writes binary P5 with maxval 255.
void SavePgm(const Image& image, const std::string& path);
std::string EncodePgm(const Image& image);
Image DecodePgm(std::span<const uint8_t> bytes);

// BT.601 luma.
Image ToGrayscale(const RgbImage& rgb);

Image ResizeNearest(const Image& image, int new_width, int new_height);

// stretch == false clips to [lo, hi]. stretch == true maps [min, max] of the
// image affinely onto [lo, hi]; a constant image maps to (lo + hi) / 2.
Image NormalizeClip(const Image& image, double lo, double hi, bool stretch);

Image FlipHorizontal(const Image& image);
Image FlipVertical(const Image& image);

// Pads to the next multiples of (mx, my) by replicating the last column/row.
Image PadReplicate(const Image& image, int multiple_x, int multiple_y);
Image Crop(const Image& image, int width, int height);

}  // namespace ridgelab

#endif  // RIDGELAB_IMAGE_H_
