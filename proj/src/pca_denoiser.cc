#include "ridgelab/pca_denoiser.h"

#include <algorithm>
#include <cmath>

#include "ridgelab/metrics.h"

namespace ridgelab {

namespace {

constexpr double kAutoTauFactor = 3.0;
constexpr double kAutoTauFloor = 6.0;

}  // namespace

void ValidatePcaConfig(const PcaConfig& config) {
  if (config.tau && !(*config.tau > 0 && std::isfinite(*config.tau))) {
    throw Error(ErrorCode::kInvalidConfig, "tau must be positive");
  }
  if (config.max_passes < 1) {
    throw Error(ErrorCode::kInvalidConfig, "passes must be >= 1");
  }
}

double ResolveTau(const PcaConfig& config, const Image& image) {
  if (config.tau) return *config.tau;
  double sigma = 0.0;
  if (image.width() >= 2 && image.height() >= 2) {
    sigma = EstimateNoiseSigma(image);
  }
  return std::max(kAutoTauFloor, kAutoTauFactor * sigma);
}

double MedianOf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

BlockGrid PartitionBlocks(const Image& image) {
  BlockGrid grid;
  grid.source_width = image.width();
  grid.source_height = image.height();
  grid.padded_width = (image.width() + kBlockSide - 1) / kBlockSide * kBlockSide;
  grid.padded_height =
      (image.height() + kBlockSide - 1) / kBlockSide * kBlockSide;
  grid.blocks.resize(static_cast<size_t>(grid.blocks_x()) * grid.blocks_y());
  for (size_t i = 0; i < grid.blocks.size(); ++i) {
    const int ox = grid.origin_x(i);
    const int oy = grid.origin_y(i);
    Block& block = grid.blocks[i];
    for (int dy = 0; dy < kBlockSide; ++dy) {
      for (int dx = 0; dx < kBlockSide; ++dx) {
        block[dy * kBlockSide + dx] = image.clamped(ox + dx, oy + dy);
      }
    }
  }
  return grid;
}

Image Reassemble(const BlockGrid& grid) {
  Image out(grid.source_width, grid.source_height);
  for (size_t i = 0; i < grid.blocks.size(); ++i) {
    const int ox = grid.origin_x(i);
    const int oy = grid.origin_y(i);
    for (int dy = 0; dy < kBlockSide; ++dy) {
      for (int dx = 0; dx < kBlockSide; ++dx) {
        const int x = ox + dx;
        const int y = oy + dy;
        if (x < grid.source_width && y < grid.source_height) {
          out.at(x, y) = grid.blocks[i][dy * kBlockSide + dx];
        }
      }
    }
  }
  return out;
}

HomogeneityVerdict AnalyzeBlock(const Block& block, double tau) {
  HomogeneityVerdict verdict;
  const auto [lo, hi] = std::minmax_element(block.begin(), block.end());
  verdict.block_median = MedianOf({block.begin(), block.end()});
  if (*hi - *lo <= tau) return verdict;

  verdict.homogeneous = false;
  const double margin = tau / 2;
  for (int i = 0; i < kBlockPixels; ++i) {
    if (std::abs(block[i] - verdict.block_median) > margin) {
      verdict.flagged.push_back(i);
    }
  }
  return verdict;
}

double RepairPixel(const Image& image, int x, int y,
                   const std::vector<uint8_t>& flagged_mask,
                   double block_median) {
  std::vector<double> candidates;
  candidates.reserve(8);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int nx = x + dx;
      const int ny = y + dy;
      if (nx < 0 || ny < 0 || nx >= image.width() || ny >= image.height()) {
        continue;
      }
      if (flagged_mask[static_cast<size_t>(ny) * image.width() + nx]) continue;
      candidates.push_back(image.at(nx, ny));
    }
  }
  if (candidates.empty()) return block_median;
  return MedianOf(std::move(candidates));
}

bool DeviatesFromNeighborhood(const Image& image, int x, int y, double tau) {
  std::vector<double> neighbors;
  neighbors.reserve(8);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int nx = x + dx;
      const int ny = y + dy;
      if (nx < 0 || ny < 0 || nx >= image.width() || ny >= image.height()) {
        continue;
      }
      neighbors.push_back(image.at(nx, ny));
    }
  }
  if (neighbors.empty()) return true;  // 1x1 image
  return std::abs(image.at(x, y) - MedianOf(std::move(neighbors))) > tau;
}

Image DenoisePass(const Image& image, double tau, bool neighbor_check,
                  PcaPassStats* stats) {
  BlockGrid grid = PartitionBlocks(image);
  std::vector<HomogeneityVerdict> verdicts(grid.blocks.size());
  std::vector<uint8_t> mask(image.size(), 0);
  PcaPassStats local;

  // Flags are computed for the whole pass before any repair.
  for (size_t i = 0; i < grid.blocks.size(); ++i) {
    verdicts[i] = AnalyzeBlock(grid.blocks[i], tau);
    if (verdicts[i].homogeneous) continue;
    ++local.non_homogeneous_blocks;
    std::vector<int> noisy;
    for (int idx : verdicts[i].flagged) {
      const int x = grid.origin_x(i) + idx % kBlockSide;
      const int y = grid.origin_y(i) + idx / kBlockSide;
      // Flags on padding replicas have no pixel of their own.
      if (x >= image.width() || y >= image.height()) continue;
      ++local.candidate_pixels;
      if (neighbor_check && !DeviatesFromNeighborhood(image, x, y, tau)) {
        continue;
      }
      mask[static_cast<size_t>(y) * image.width() + x] = 1;
      noisy.push_back(idx);
      ++local.flagged_pixels;
    }
    verdicts[i].flagged = std::move(noisy);
  }

  for (size_t i = 0; i < grid.blocks.size(); ++i) {
    for (int idx : verdicts[i].flagged) {
      const int x = grid.origin_x(i) + idx % kBlockSide;
      const int y = grid.origin_y(i) + idx / kBlockSide;
      grid.blocks[i][idx] =
          RepairPixel(image, x, y, mask, verdicts[i].block_median);
    }
  }

  if (stats) *stats = local;
  return Reassemble(grid);
}

Image Denoise(const Image& image, const PcaConfig& config) {
  ValidatePcaConfig(config);
  const double tau = ResolveTau(config, image);
  Image current = image;
  size_t repaired = 0;
  for (int pass = 0; pass < config.max_passes; ++pass) {
    PcaPassStats stats;
    Image next = DenoisePass(current, tau, config.neighbor_check, &stats);
    if (stats.flagged_pixels == 0) break;
    repaired += stats.flagged_pixels;
    current = std::move(next);
  }
  // An untouched image is a fixed point under every config, stretch included.
  return NormalizeClip(current, 0.0, 255.0,
                       config.stretch_output && repaired > 0);
}

}  // namespace ridgelab
