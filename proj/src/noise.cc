#include "ridgelab/noise.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ridgelab/format.h"

namespace ridgelab {

namespace {

uint64_t SplitMix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void ValidateSpec(NoiseKind kind, double param) {
  if (!std::isfinite(param)) {
    throw Error(ErrorCode::kInvalidConfig, "noise parameter must be finite");
  }
  switch (kind) {
    case NoiseKind::kGaussian:
      if (param < 0) throw Error(ErrorCode::kNegativeSigma, "sigma < 0");
      break;
    case NoiseKind::kSpeckle:
      if (param < 0) throw Error(ErrorCode::kNegativeVariance, "variance < 0");
      break;
    case NoiseKind::kSaltPepper:
      if (param < 0 || param > 1) {
        throw Error(ErrorCode::kDensityOutOfRange,
                    "salt-pepper density must lie in [0, 1]");
      }
      break;
  }
}

}  // namespace

Xoshiro256::Xoshiro256(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : state_) s = SplitMix64(sm);
}

uint64_t Xoshiro256::Next() {
  const uint64_t result = Rotl(state_[1] * 5, 7) * 9;
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = Rotl(state_[3], 45);
  return result;
}

double Xoshiro256::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double NormalSampler::Next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = rng_.Uniform();
  const double u2 = rng_.Uniform();
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

NoiseSpec ParseNoiseSpec(std::string_view text) {
  const auto fields = SplitString(text, ':');
  if (fields.size() != 3) {
    throw Error(ErrorCode::kParseError,
                "noise spec must be kind:param:seed, got '" +
                    std::string(text) + "'");
  }
  NoiseSpec spec;
  const std::string_view kind = fields[0];
  if (kind == "gaussian" || kind == "gauss") {
    spec.kind = NoiseKind::kGaussian;
  } else if (kind == "speckle") {
    spec.kind = NoiseKind::kSpeckle;
  } else if (kind == "sp" || kind == "salt_pepper") {
    spec.kind = NoiseKind::kSaltPepper;
  } else {
    throw Error(ErrorCode::kParseError,
                "unknown noise kind '" + std::string(kind) + "'");
  }
  spec.param = ParseDouble(fields[1]);
  spec.seed = ParseUint64(fields[2]);
  ValidateSpec(spec.kind, spec.param);
  return spec;
}

std::string FormatNoiseSpec(const NoiseSpec& spec) {
  std::string kind;
  switch (spec.kind) {
    case NoiseKind::kGaussian: kind = "gaussian"; break;
    case NoiseKind::kSpeckle: kind = "speckle"; break;
    case NoiseKind::kSaltPepper: kind = "sp"; break;
  }
  return kind + ":" + FormatDouble(spec.param) + ":" +
         std::to_string(spec.seed);
}

Image AddGaussian(const Image& image, double sigma, uint64_t seed) {
  ValidateSpec(NoiseKind::kGaussian, sigma);
  if (sigma == 0.0) return image;
  NormalSampler normal(seed);
  Image out = image;
  for (double& v : out.pixels()) {
    v = std::clamp(v + sigma * normal.Next(), 0.0, 255.0);
  }
  return out;
}

Image AddSpeckle(const Image& image, double variance, uint64_t seed) {
  ValidateSpec(NoiseKind::kSpeckle, variance);
  if (variance == 0.0) return image;
  const double scale = std::sqrt(variance);
  NormalSampler normal(seed);
  Image out = image;
  for (double& v : out.pixels()) {
    v = std::clamp(v * (1.0 + scale * normal.Next()), 0.0, 255.0);
  }
  return out;
}

// Two uniforms per pixel: the first decides corruption, the second picks
// pepper (< 0.5) or salt. Both are drawn even for clean pixels so that the
// stream position depends only on the pixel index.
Image AddSaltPepper(const Image& image, double density, uint64_t seed) {
  ValidateSpec(NoiseKind::kSaltPepper, density);
  if (density == 0.0) return image;
  Xoshiro256 rng(seed);
  Image out = image;
  for (double& v : out.pixels()) {
    const double hit = rng.Uniform();
    const double polarity = rng.Uniform();
    if (hit < density) v = polarity < 0.5 ? 0.0 : 255.0;
  }
  return out;
}

Image ApplyNoise(const Image& image, const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::kGaussian: return AddGaussian(image, spec.param, spec.seed);
    case NoiseKind::kSpeckle: return AddSpeckle(image, spec.param, spec.seed);
    case NoiseKind::kSaltPepper:
      return AddSaltPepper(image, spec.param, spec.seed);
  }
  return image;
}

}  // namespace ridgelab
