#include <cmath>

#include "doctest.h"
#include "ridgelab/wavelet.h"
#include "test_util.h"

namespace ridgelab {
namespace {

double Energy(const Image& image) {
  double e = 0;
  for (double v : image.pixels()) e += v * v;
  return e;
}

double Energy(const HaarPyramid& p) {
  double e = Energy(p.approximation);
  for (const HaarLevel& l : p.levels) e += Energy(l.lh) + Energy(l.hl) + Energy(l.hh);
  return e;
}

TEST_CASE("haar pair closed form") {
  double a, d;
  HaarPair(4, 2, &a, &d);
  CHECK(a == doctest::Approx(3 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("2x2 analysis by hand") {
  // rows: (1,2)->(3/r2, -1/r2); (3,4)->(7/r2, -1/r2)
  // cols: LL = (3+7)/2 = 5, LH = (3-7)/2 = -2, HL = (-1-1)/2 = -1, HH = 0
  const HaarPyramid p = HaarDwt2(Image(2, 2, {1, 2, 3, 4}), 1);
  CHECK(p.approximation.at(0, 0) == doctest::Approx(5.0));
  CHECK(p.levels[0].lh.at(0, 0) == doctest::Approx(-2.0));
  CHECK(p.levels[0].hl.at(0, 0) == doctest::Approx(-1.0));
  CHECK(p.levels[0].hh.at(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("constant image has zero details") {
  const HaarPyramid p = HaarDwt2(Image(16, 8, 33.0), 3);
  for (const HaarLevel& l : p.levels) {
    for (const Image* band : {&l.lh, &l.hl, &l.hh}) {
      for (double c : band->pixels()) REQUIRE(c == 0.0);
    }
  }
}

TEST_CASE("energy preservation and perfect reconstruction") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Image image = testing::RandomImage(rng, 8, 8);
    const HaarPyramid p = HaarDwt2(image, 3);
    REQUIRE(std::abs(Energy(p) - Energy(image)) <= 1e-9 * Energy(image));

    const Image big = testing::RandomImage(rng, 16, 16);
    const Image back = HaarIdwt2(HaarDwt2(big, 2));
    for (size_t i = 0; i < big.size(); ++i) {
      REQUIRE(std::abs(back.pixels()[i] - big.pixels()[i]) <= 1e-9);
    }
  }
}

TEST_CASE("inverse of special pyramids") {
  HaarPyramid zero = HaarDwt2(Image(8, 8, 0.0), 2);
  CHECK(HaarIdwt2(zero) == Image(8, 8, 0.0));

  // A lone approximation coefficient c spreads as c / 2^levels.
  for (int levels = 1; levels <= 3; ++levels) {
    const int side = 1 << levels;
    HaarPyramid p = HaarDwt2(Image(side, side, 0.0), levels);
    p.approximation.at(0, 0) = 8.0;
    const Image out = HaarIdwt2(p);
    for (double v : out.pixels()) {
      REQUIRE(v == doctest::Approx(8.0 / side).epsilon(1e-12));
    }
  }
}

TEST_CASE("indivisible dims are rejected; padded variant crops back") {
  try {
    HaarDwt2(Image(6, 8), 2);
    FAIL("expected IndivisibleDims");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIndivisibleDims);
  }
  std::mt19937_64 rng(13);
  const Image odd = testing::RandomImage(rng, 13, 7);
  const HaarPyramid p = HaarDwt2Padded(odd, 3);
  CHECK(p.width == 16);
  CHECK(p.height == 8);
  const Image back = HaarIdwt2(p);
  REQUIRE(back.width() == 13);
  REQUIRE(back.height() == 7);
  for (size_t i = 0; i < odd.size(); ++i) {
    REQUIRE(std::abs(back.pixels()[i] - odd.pixels()[i]) <= 1e-9);
  }
}

}  // namespace
}  // namespace ridgelab
