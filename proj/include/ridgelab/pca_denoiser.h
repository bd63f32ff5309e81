// Pixel Component Analysis de-noising.
//
// The image is tiled into 3x3 clusters (edge-replicated to multiples of 3).
// A cluster whose intensity range exceeds tau is non-homogeneous; its pixels
// further than tau/2 from the cluster median are flagged. With neighbor_check
// on, a flagged pixel is only treated as noise if it also differs from the
// median of its full 8-neighbourhood by more than tau. Noise pixels are
// replaced by the median of their un-flagged 8-neighbours in the full image.
// Flags and repair sources are read from the image as it was at the start of
// the pass, so the result does not depend on the order blocks are visited.
// The output is clipped to [0, 255]; stretch_output stretches instead, but
// only when some pixel was repaired.

#ifndef RIDGELAB_PCA_DENOISER_H_
#define RIDGELAB_PCA_DENOISER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ridgelab/image.h"

namespace ridgelab {

inline constexpr int kBlockSide = 3;
inline constexpr int kBlockPixels = kBlockSide * kBlockSide;

struct PcaConfig {
  // Empty means "auto": 3 * EstimateNoiseSigma(image), floored at 6.
  std::optional<double> tau = 24.0;
  int max_passes = 1;
  bool stretch_output = false;
  bool neighbor_check = true;

  double outlier_margin(double resolved_tau) const { return resolved_tau / 2; }
};

void ValidatePcaConfig(const PcaConfig& config);
double ResolveTau(const PcaConfig& config, const Image& image);

using Block = std::array<double, kBlockPixels>;

struct BlockGrid {
  int source_width = 0;
  int source_height = 0;
  int padded_width = 0;
  int padded_height = 0;
  std::vector<Block> blocks;  // row-major over the block lattice

  int blocks_x() const { return padded_width / kBlockSide; }
  int blocks_y() const { return padded_height / kBlockSide; }
  // Top-left source coordinate of block i.
  int origin_x(size_t i) const {
    return static_cast<int>(i % blocks_x()) * kBlockSide;
  }
  int origin_y(size_t i) const {
    return static_cast<int>(i / blocks_x()) * kBlockSide;
  }
};

BlockGrid PartitionBlocks(const Image& image);
// Places every block back at its origin and crops the padding.
Image Reassemble(const BlockGrid& grid);

struct HomogeneityVerdict {
  bool homogeneous = true;
  double block_median = 0.0;
  std::vector<int> flagged;  // in-block indices 0..8, ascending
};

HomogeneityVerdict AnalyzeBlock(const Block& block, double tau);

// Median of the un-flagged 8-neighbours of (x, y); the block median when
// none remain. flagged_mask is row-major over the full image.
double RepairPixel(const Image& image, int x, int y,
                   const std::vector<uint8_t>& flagged_mask,
                   double block_median);

struct PcaPassStats {
  size_t candidate_pixels = 0;  // flagged by AnalyzeBlock
  size_t flagged_pixels = 0;    // actually repaired
  size_t non_homogeneous_blocks = 0;
};

// True when (x, y) differs from the median of its in-bounds 8-neighbours by
// more than tau.
bool DeviatesFromNeighborhood(const Image& image, int x, int y, double tau);

// One Jacobi-style pass without the final normalization.
Image DenoisePass(const Image& image, double tau, bool neighbor_check,
                  PcaPassStats* stats = nullptr);

Image Denoise(const Image& image, const PcaConfig& config = {});

// Median of a small set; even counts average the two central values.
double MedianOf(std::vector<double> values);

}  // namespace ridgelab

#endif  // RIDGELAB_PCA_DENOISER_H_
