// Seeded, reproducible noise injectors.
//
// Random numbers come from xoshiro256** (Blackman & Vigna) whose 256-bit state
// is filled by four successive splitmix64 outputs of the 64-bit seed:
//
//   splitmix64: s += 0x9E3779B97F4A7C15;
//               z = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9;
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//               return z ^ (z >> 31);
//   xoshiro256**: result = rotl(s1 * 5, 7) * 9; t = s1 << 17;
//                 s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t;
//                 s3 = rotl(s3, 45);
//
// Uniforms use the top 53 bits: u = (x >> 11) * 2^-53 in [0, 1).
// Normals use Box-Muller on a pair of uniforms (u1, u2), consumed in that
// order, with u1 replaced by 1 - u1 so the logarithm argument is in (0, 1]:
//   z0 = sqrt(-2 ln(1 - u1)) cos(2 pi u2),  z1 = sqrt(-2 ln(1 - u1)) sin(2 pi u2)
// Pixels draw normals in row-major order: pixel 2k gets z0, pixel 2k+1 gets z1.

#ifndef RIDGELAB_NOISE_H_
#define RIDGELAB_NOISE_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "ridgelab/image.h"

namespace ridgelab {

class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed);

  uint64_t Next();
  // Uniform in [0, 1).
  double Uniform();

 private:
  std::array<uint64_t, 4> state_;
};

// Box-Muller standard normal source; caches the second value of each pair.
class NormalSampler {
 public:
  explicit NormalSampler(uint64_t seed) : rng_(seed) {}
  double Next();

 private:
  Xoshiro256 rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

enum class NoiseKind { kGaussian, kSpeckle, kSaltPepper };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;
  // gaussian: sigma; speckle: multiplier variance; salt_pepper: density.
  double param = 0.0;
  uint64_t seed = 0;

  bool operator==(const NoiseSpec&) const = default;
};

// "kind:param:seed"; kind is gaussian|gauss, speckle, sp|salt_pepper.
NoiseSpec ParseNoiseSpec(std::string_view text);
// Canonical form, e.g. "sp:0.05:42".
std::string FormatNoiseSpec(const NoiseSpec& spec);

Image AddGaussian(const Image& image, double sigma, uint64_t seed);
Image AddSpeckle(const Image& image, double variance, uint64_t seed);
Image AddSaltPepper(const Image& image, double density, uint64_t seed);
Image ApplyNoise(const Image& image, const NoiseSpec& spec);

}  // namespace ridgelab

#endif  // RIDGELAB_NOISE_H_
