#include "ridgelab/image.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>

namespace ridgelab {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidDimensions: return "InvalidDimensions";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kNegativeSigma: return "NegativeSigma";
    case ErrorCode::kNegativeVariance: return "NegativeVariance";
    case ErrorCode::kDensityOutOfRange: return "DensityOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kImageTooSmall: return "ImageTooSmall";
    case ErrorCode::kIndivisibleDims: return "IndivisibleDims";
    case ErrorCode::kBlockTooSmall: return "BlockTooSmall";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Image::Image(int width, int height, double fill) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidDimensions,
                "image dimensions must be positive");
  }
  width_ = width;
  height_ = height;
  pixels_.assign(static_cast<size_t>(width) * static_cast<size_t>(height),
                 fill);
}

Image::Image(int width, int height, std::vector<double> pixels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidDimensions,
                "image dimensions must be positive");
  }
  if (pixels.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidDimensions,
                "pixel count does not match width x height");
  }
  for (double v : pixels) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidRange, "non-finite intensity");
    }
  }
  width_ = width;
  height_ = height;
  pixels_ = std::move(pixels);
}

double Image::clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return pixels_[Index(x, y)];
}

double Image::min() const {
  return *std::min_element(pixels_.begin(), pixels_.end());
}

double Image::max() const {
  return *std::max_element(pixels_.begin(), pixels_.end());
}

double RoundHalfUp(double v) { return std::floor(v + 0.5); }

uint8_t QuantizeValue(double v) {
  return static_cast<uint8_t>(std::clamp(RoundHalfUp(v), 0.0, 255.0));
}

Image Quantize(const Image& image) {
  Image out = image;
  for (double& v : out.pixels()) v = QuantizeValue(v);
  return out;
}

bool IsQuantized(const Image& image) {
  return std::all_of(image.pixels().begin(), image.pixels().end(),
                     [](double v) {
                       return v >= 0.0 && v <= 255.0 && v == std::floor(v);
                     });
}

namespace {

// Header tokenizer following the PNM convention: whitespace separated,
// '#' starts a comment running to end of line.
class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  long NextInt() {
    SkipWhitespaceAndComments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader, "expected integer in header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1000000000L) {
        throw Error(ErrorCode::kMalformedHeader, "header value too large");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from raster data.
  void ConsumeSingleWhitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader,
                  "missing whitespace after maxval");
    }
    ++pos_;
  }

  size_t position() const { return pos_; }
  void set_position(size_t pos) { pos_ = pos; }

 private:
  void SkipWhitespaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

double RescaleSample(long sample, long maxval) {
  if (sample > maxval) {
    throw Error(ErrorCode::kMalformedHeader, "sample exceeds maxval");
  }
  if (maxval == 255) return static_cast<double>(sample);
  return RoundHalfUp(static_cast<double>(sample) * 255.0 /
                     static_cast<double>(maxval));
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, "file not found: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

struct PngImageDeleter {
  void operator()(png_image* image) const { png_image_free(image); }
};

Image DecodePng(std::span<const uint8_t> bytes) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kMalformedHeader,
                std::string("png: ") + png.message);
  }
  std::unique_ptr<png_image, PngImageDeleter> guard(&png);

  const auto native = png.format;
  if ((native & (PNG_FORMAT_FLAG_LINEAR | PNG_FORMAT_FLAG_ALPHA |
                 PNG_FORMAT_FLAG_COLORMAP)) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "only 8-bit grayscale and 8-bit RGB PNG are supported");
  }
  const bool color = (native & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  const int width = static_cast<int>(png.width);
  const int height = static_cast<int>(png.height);
  std::vector<uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIoError, std::string("png: ") + png.message);
  }
  guard.release();

  if (color) {
    RgbImage rgb{width, height, std::move(buffer)};
    return ToGrayscale(rgb);
  }
  return Image(width, height, std::vector<double>(buffer.begin(), buffer.end()));
}

}  // namespace

Image DecodePgm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '2' && bytes[1] != '5')) {
    throw Error(ErrorCode::kUnsupportedFormat, "not a P2/P5 PGM stream");
  }
  const bool ascii = bytes[1] == '2';
  PnmHeaderReader reader(bytes);
  reader.set_position(2);
  const long width = reader.NextInt();
  const long height = reader.NextInt();
  const long maxval = reader.NextInt();
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedHeader, "non-positive dimensions");
  }
  if (maxval <= 0 || maxval > 65535) {
    throw Error(ErrorCode::kMalformedHeader, "maxval out of range");
  }
  const size_t count = static_cast<size_t>(width) * static_cast<size_t>(height);
  std::vector<double> pixels(count);

  if (ascii) {
    for (size_t i = 0; i < count; ++i) {
      pixels[i] = RescaleSample(reader.NextInt(), maxval);
    }
  } else {
    reader.ConsumeSingleWhitespace();
    const size_t sample_bytes = maxval > 255 ? 2 : 1;
    const size_t offset = reader.position();
    if (bytes.size() - offset < count * sample_bytes) {
      throw Error(ErrorCode::kMalformedHeader, "truncated raster data");
    }
    for (size_t i = 0; i < count; ++i) {
      long sample = bytes[offset + i * sample_bytes];
      if (sample_bytes == 2) {
        sample = (sample << 8) | bytes[offset + i * 2 + 1];  // big-endian
      }
      pixels[i] = RescaleSample(sample, maxval);
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height),
               std::move(pixels));
}

Image LoadImage(const std::string& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  static constexpr uint8_t kPngSignature[8] = {0x89, 'P',  'N',  'G',
                                               '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(bytes.begin(), bytes.begin() + 8,
                                      std::begin(kPngSignature))) {
    return DecodePng(bytes);
  }
  return DecodePgm(bytes);
}

std::string EncodePgm(const Image& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.reserve(out.size() + image.size());
  for (double v : image.pixels()) {
    out.push_back(static_cast<char>(QuantizeValue(v)));
  }
  return out;
}

void SavePgm(const Image& image, const std::string& path) {
  const std::string encoded = EncodePgm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(encoded.data(), static_cast<std::streamsize>(encoded.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

Image ToGrayscale(const RgbImage& rgb) {
  if (rgb.pixels.size() !=
      3 * static_cast<size_t>(rgb.width) * static_cast<size_t>(rgb.height)) {
    throw Error(ErrorCode::kInvalidDimensions,
                "rgb buffer does not match dimensions");
  }
  Image out(rgb.width, rgb.height);
  auto dst = out.pixels();
  for (size_t i = 0; i < dst.size(); ++i) {
    const double r = rgb.pixels[3 * i];
    const double g = rgb.pixels[3 * i + 1];
    const double b = rgb.pixels[3 * i + 2];
    // Clamp guards R == G == B == 255 against 254.99999999999997.
    dst[i] = std::min(255.0, RoundHalfUp(0.299 * r + 0.587 * g + 0.114 * b));
  }
  return out;
}

Image ResizeNearest(const Image& image, int new_width, int new_height) {
  if (new_width < 1 || new_height < 1) {
    throw Error(ErrorCode::kInvalidDimensions, "resize target must be >= 1");
  }
  auto source_index = [](int i, int old_size, int new_size) {
    const double pos = (i + 0.5) * static_cast<double>(old_size) / new_size;
    return std::min(static_cast<int>(std::floor(pos)), old_size - 1);
  };
  Image out(new_width, new_height);
  for (int y = 0; y < new_height; ++y) {
    const int sy = source_index(y, image.height(), new_height);
    for (int x = 0; x < new_width; ++x) {
      out.at(x, y) = image.at(source_index(x, image.width(), new_width), sy);
    }
  }
  return out;
}

Image NormalizeClip(const Image& image, double lo, double hi, bool stretch) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::kInvalidRange, "normalize range requires lo < hi");
  }
  Image out = image;
  if (!stretch) {
    for (double& v : out.pixels()) v = std::clamp(v, lo, hi);
    return out;
  }
  const double mn = image.min();
  const double mx = image.max();
  if (mx == mn) {
    for (double& v : out.pixels()) v = (lo + hi) / 2.0;
    return out;
  }
  for (double& v : out.pixels()) {
    v = std::clamp(lo + (v - mn) / (mx - mn) * (hi - lo), lo, hi);
  }
  return out;
}

Image FlipHorizontal(const Image& image) {
  Image out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      out.at(image.width() - 1 - x, y) = image.at(x, y);
    }
  }
  return out;
}

Image FlipVertical(const Image& image) {
  Image out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      out.at(x, image.height() - 1 - y) = image.at(x, y);
    }
  }
  return out;
}

Image PadReplicate(const Image& image, int multiple_x, int multiple_y) {
  const int pw = (image.width() + multiple_x - 1) / multiple_x * multiple_x;
  const int ph = (image.height() + multiple_y - 1) / multiple_y * multiple_y;
  if (pw == image.width() && ph == image.height()) return image;
  Image out(pw, ph);
  for (int y = 0; y < ph; ++y) {
    for (int x = 0; x < pw; ++x) out.at(x, y) = image.clamped(x, y);
  }
  return out;
}

Image Crop(const Image& image, int width, int height) {
  if (width > image.width() || height > image.height()) {
    throw Error(ErrorCode::kInvalidDimensions, "crop larger than image");
  }
  if (width == image.width() && height == image.height()) return image;
  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.at(x, y) = image.at(x, y);
  }
  return out;
}

}  // namespace ridgelab
