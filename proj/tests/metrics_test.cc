#include <cmath>
#include <limits>

#include "doctest.h"
#include "ridgelab/metrics.h"
#include "ridgelab/noise.h"
#include "test_util.h"

namespace ridgelab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("mse") {
  std::mt19937_64 rng(4);
  const Image a = testing::RandomImage(rng, 8, 8);
  CHECK(Mse(a, a) == 0.0);
  CHECK(Mse(Image(5, 4, 100.0), Image(5, 4, 110.0)) == 100.0);
  CHECK(Mse(Image(4, 1, 0.0), Image(4, 1, {1, 2, 3, 4})) == 7.5);
  try {
    Mse(Image(2, 2), Image(2, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("snr") {
  std::mt19937_64 rng(5);
  const Image a = testing::RandomImage(rng, 8, 8);
  CHECK(SnrDb(a, a) == kInf);
  CHECK(SnrDb(Image(3, 3, 100.0), Image(3, 3, 110.0)) ==
        doctest::Approx(20.0).epsilon(1e-12));
  CHECK(SnrDb(Image(3, 3, 0.0), Image(3, 3, 1.0)) == -kInf);
  CHECK(SnrDb(Image(3, 3, 0.0), Image(3, 3, 0.0)) == kInf);
  CHECK_THROWS_AS(SnrDb(Image(2, 2), Image(3, 2)), Error);
}

TEST_CASE("psnr") {
  std::mt19937_64 rng(6);
  const Image a = testing::RandomImage(rng, 8, 8);
  CHECK(PsnrDb(a, a) == kInf);
  CHECK(PsnrDb(Image(4, 4, 0.0), Image(4, 4, 255.0)) == 0.0);
  CHECK(PsnrDb(Image(4, 4, 100.0), Image(4, 4, 110.0)) ==
        doctest::Approx(28.130803608679106).epsilon(1e-12));
  CHECK_THROWS_AS(PsnrDb(Image(2, 2), Image(3, 2)), Error);
}

TEST_CASE("metric identities on random pairs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Image ref = testing::RandomImage(rng, 12, 9, 1, 255);
    const Image test = testing::RandomImage(rng, 12, 9);
    REQUIRE(Mse(ref, test) == doctest::Approx(Mse(test, ref)).epsilon(1e-12));

    const double mse = Mse(ref, test);
    const double psnr = PsnrDb(ref, test);
    REQUIRE(std::abs(psnr - 10 * std::log10(255.0 * 255.0 / mse)) <=
            1e-12 * std::abs(psnr));

    const double k = 1.5 + (rng() % 100) / 40.0;
    Image scaled = ref;
    for (size_t i = 0; i < ref.size(); ++i) {
      scaled.pixels()[i] =
          ref.pixels()[i] + k * (test.pixels()[i] - ref.pixels()[i]);
    }
    REQUIRE(Mse(ref, scaled) == doctest::Approx(k * k * mse).epsilon(1e-10));
    REQUIRE(SnrDb(ref, test) - SnrDb(ref, scaled) ==
            doctest::Approx(20 * std::log10(k)).epsilon(1e-10));
  }
  // SNR privileges the reference.
  const Image lo(4, 4, 50.0), hi(4, 4, 100.0);
  CHECK(SnrDb(lo, hi) != SnrDb(hi, lo));
}

TEST_CASE("noise sigma estimate") {
  CHECK(EstimateNoiseSigma(Image(16, 16, 42.0)) == 0.0);

  const Image noisy = AddGaussian(Image(256, 256, 128.0), 15.0, 99);
  CHECK(std::abs(EstimateNoiseSigma(noisy) - 15.0) <= 1.5);

  Image checker(16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) checker.at(x, y) = ((x + y) % 2) * 255.0;
  }
  CHECK(EstimateNoiseSigma(checker) > 0.0);

  // Odd sizes are padded by replication.
  CHECK(EstimateNoiseSigma(Image(5, 3, 9.0)) == 0.0);
  try {
    EstimateNoiseSigma(Image(1, 8));
    FAIL("expected ImageTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kImageTooSmall);
  }
}

TEST_CASE("metrics json uses string infinities") {
  MetricsReport report;
  report.mse = 0.0;
  report.snr_db = kInf;
  report.psnr_db = kInf;
  CHECK(MetricsToJson(report) ==
        R"({"mse":0.0,"snr_db":"inf","psnr_db":"inf","sigma_hat":null})");
  report.snr_db = -kInf;
  report.sigma_hat = 2.5;
  CHECK(MetricsToJson(report) ==
        R"({"mse":0.0,"snr_db":"-inf","psnr_db":"inf","sigma_hat":2.5})");
}

}  // namespace
}  // namespace ridgelab
