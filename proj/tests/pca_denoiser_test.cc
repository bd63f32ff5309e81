#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ridgelab/pca_denoiser.h"
#include "test_util.h"

namespace ridgelab {
namespace {

// Random image whose every 3x3 tile has range <= tau.
Image RandomHomogeneous(std::mt19937_64& rng, int w, int h, double tau) {
  Image out(w, h);
  std::uniform_int_distribution<int> base(0, 255 - static_cast<int>(tau));
  std::uniform_int_distribution<int> jitter(0, static_cast<int>(tau));
  for (int by = 0; by < h; by += 3) {
    for (int bx = 0; bx < w; bx += 3) {
      const int b = base(rng);
      for (int y = by; y < std::min(by + 3, h); ++y) {
        for (int x = bx; x < std::min(bx + 3, w); ++x) out.at(x, y) = b + jitter(rng);
      }
    }
  }
  return out;
}

Image WithImpulses(std::mt19937_64& rng, Image image, double density) {
  std::bernoulli_distribution hit(density), salt(0.5);
  for (double& v : image.pixels()) {
    if (hit(rng)) v = salt(rng) ? 255.0 : 0.0;
  }
  return image;
}

TEST_CASE("partition and reassemble") {
  const Image three(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const BlockGrid g3 = PartitionBlocks(three);
  REQUIRE(g3.blocks.size() == 1);
  CHECK(g3.blocks[0] == Block{1, 2, 3, 4, 5, 6, 7, 8, 9});

  Image six(6, 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 6; ++x) six.at(x, y) = x < 3 ? 1.0 : 2.0;
  }
  const BlockGrid g6 = PartitionBlocks(six);
  REQUIRE(g6.blocks.size() == 2);
  CHECK(g6.blocks[0][0] == 1.0);
  CHECK(g6.blocks[1][0] == 2.0);
  CHECK(g6.origin_x(1) == 3);

  std::mt19937_64 rng(40);
  const Image four = testing::RandomImage(rng, 4, 4);
  const BlockGrid g4 = PartitionBlocks(four);
  CHECK(g4.padded_width == 6);
  CHECK(g4.padded_height == 6);
  REQUIRE(g4.blocks.size() == 4);
  // Block 3 covers source (3..5, 3..5); everything replicates pixel (3,3).
  for (double v : g4.blocks[3]) CHECK(v == four.at(3, 3));
  CHECK(g4.blocks[1][2] == four.at(3, 0));
  CHECK(Reassemble(g4) == four);

  for (int trial = 0; trial < 20; ++trial) {
    const Image img = testing::RandomImage(rng, 1 + rng() % 20, 1 + rng() % 20);
    REQUIRE(Reassemble(PartitionBlocks(img)) == img);
  }
}

TEST_CASE("analyze block") {
  Block flat;
  flat.fill(40.0);
  const HomogeneityVerdict a = AnalyzeBlock(flat, 24);
  CHECK(a.homogeneous);
  CHECK(a.flagged.empty());

  Block impulse;
  impulse.fill(100.0);
  impulse[5] = 255.0;
  const HomogeneityVerdict b = AnalyzeBlock(impulse, 24);
  CHECK_FALSE(b.homogeneous);
  CHECK(b.block_median == 100.0);
  CHECK(b.flagged == std::vector<int>{5});

  const HomogeneityVerdict c = AnalyzeBlock({90, 91, 92, 93, 94, 95, 96, 97, 98}, 24);
  CHECK(c.homogeneous);
  CHECK(c.flagged.empty());
}

TEST_CASE("flag soundness over random blocks") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> value(0, 255);
  std::uniform_real_distribution<double> tau_dist(1.0, 120.0);
  for (int trial = 0; trial < 20000; ++trial) {
    Block block;
    for (double& v : block) v = value(rng);
    const double tau = tau_dist(rng);
    const auto [lo, hi] = std::minmax_element(block.begin(), block.end());
    const HomogeneityVerdict verdict = AnalyzeBlock(block, tau);
    REQUIRE(verdict.homogeneous == (*hi - *lo <= tau));
    if (!verdict.homogeneous) REQUIRE_FALSE(verdict.flagged.empty());
  }
}

TEST_CASE("repair pixel") {
  Image field(5, 5, 100.0);
  field.at(2, 2) = 255.0;
  std::vector<uint8_t> mask(25, 0);
  mask[2 * 5 + 2] = 1;
  CHECK(RepairPixel(field, 2, 2, mask, 100.0) == 100.0);

  // Corner: in-bounds neighbours 10 (right), 20 (below), 200 (diagonal, flagged).
  Image corner(3, 3, 0.0);
  corner.at(0, 0) = 250.0;
  corner.at(1, 0) = 10.0;
  corner.at(0, 1) = 20.0;
  corner.at(1, 1) = 200.0;
  std::vector<uint8_t> cmask(9, 0);
  cmask[0] = 1;
  cmask[1 * 3 + 1] = 1;
  CHECK(RepairPixel(corner, 0, 0, cmask, 77.0) == 15.0);

  std::vector<uint8_t> all(25, 1);
  CHECK(RepairPixel(field, 2, 2, all, 100.0) == 100.0);
  CHECK(RepairPixel(field, 2, 2, all, 42.0) == 42.0);
}

TEST_CASE("denoise fixed points") {
  for (double c : {0.0, 17.0, 255.0}) {
    CHECK(Denoise(Image(10, 7, c)) == Image(10, 7, c));
    PcaConfig stretch;
    stretch.stretch_output = true;
    stretch.max_passes = 3;
    CHECK(Denoise(Image(9, 9, c), stretch) == Image(9, 9, c));
  }
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Image image = RandomHomogeneous(rng, 30, 27, 24);
    REQUIRE(Denoise(image) == image);
  }
}

TEST_CASE("single impulse is restored") {
  Image image(256, 256, 100.0);
  image.at(130, 77) = 255.0;
  for (bool check : {true, false}) {
    PcaConfig config;
    config.neighbor_check = check;
    CHECK(Denoise(image, config) == Image(256, 256, 100.0));
  }
}

TEST_CASE("locality and value provenance") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const Image image = WithImpulses(rng, RandomHomogeneous(rng, 24, 21, 20), 0.05);
    const Image out = Denoise(image);
    const BlockGrid grid = PartitionBlocks(image);
    for (size_t b = 0; b < grid.blocks.size(); ++b) {
      if (!AnalyzeBlock(grid.blocks[b], 24).flagged.empty()) continue;
      for (int y = grid.origin_y(b); y < std::min(grid.origin_y(b) + 3, 21); ++y) {
        for (int x = grid.origin_x(b); x < std::min(grid.origin_x(b) + 3, 24); ++x) {
          REQUIRE(out.at(x, y) == image.at(x, y));
        }
      }
    }
    REQUIRE(out.min() >= image.min());
    REQUIRE(out.max() <= image.max());
  }
}

TEST_CASE("flip equivariance") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const Image image = testing::RandomQuantized(rng, 48, 48);
    for (bool check : {true, false}) {
      PcaConfig config;
      config.neighbor_check = check;
      config.max_passes = 2;
      REQUIRE(Denoise(FlipHorizontal(image), config) ==
              FlipHorizontal(Denoise(image, config)));
      REQUIRE(Denoise(FlipVertical(image), config) ==
              FlipVertical(Denoise(image, config)));
    }
  }
}

TEST_CASE("passes stop once nothing is repaired") {
  std::mt19937_64 rng(45);
  const Image image = WithImpulses(rng, RandomHomogeneous(rng, 30, 30, 16), 0.03);
  PcaConfig config;
  config.max_passes = 50;
  const Image converged = Denoise(image, config);
  PcaPassStats stats;
  const Image again = DenoisePass(converged, 24, true, &stats);
  if (stats.flagged_pixels == 0) CHECK(again == converged);
  CHECK(Denoise(converged, config) == converged);
}

TEST_CASE("neighbor check only narrows the repaired set") {
  std::mt19937_64 rng(46);
  const Image image = testing::RandomQuantized(rng, 30, 30);
  PcaPassStats literal, checked;
  DenoisePass(image, 24, false, &literal);
  DenoisePass(image, 24, true, &checked);
  CHECK(literal.flagged_pixels == literal.candidate_pixels);
  CHECK(checked.flagged_pixels <= literal.flagged_pixels);
  CHECK(checked.candidate_pixels == literal.candidate_pixels);
}

TEST_CASE("config validation and tau resolution") {
  PcaConfig bad;
  bad.tau = -1.0;
  CHECK_THROWS_AS(ValidatePcaConfig(bad), Error);
  bad.tau = 24.0;
  bad.max_passes = 0;
  CHECK_THROWS_AS(ValidatePcaConfig(bad), Error);

  PcaConfig automatic;
  automatic.tau.reset();
  CHECK(ResolveTau(automatic, Image(8, 8, 50.0)) == 6.0);
  CHECK(ResolveTau(PcaConfig{}, Image(8, 8, 50.0)) == 24.0);
}

TEST_CASE("median helper") {
  CHECK(MedianOf({3, 1, 2}) == 2.0);
  CHECK(MedianOf({10, 20}) == 15.0);
  CHECK(MedianOf({4, 1, 3, 2}) == 2.5);
}

}  // namespace
}  // namespace ridgelab
