#include <cmath>

#include <gtest/gtest.h>

#include "mpe/baselines.hpp"
#include "mpe/error.hpp"
#include "mpe/signals.hpp"
#include "mpe/transforms.hpp"

using namespace mpe;

namespace {

const Signal& piece_regular() {
  static const Signal s = load_signal(MPE_TEST_DATA_DIR "/piece_regular_4096.txt").data;
  return s;
}

}  // namespace

TEST(SureDenoise, TableOneSureColumn) {
  const Signal s = harmonic_gen(2048);
  double at0 = 0.0;
  double at_minus5 = 0.0;
  for (std::size_t t = 0; t < 100; ++t) {
    RngStream r0(1, 3'000'000 + t);
    const auto o0 = add_noise(s, GaussianNoise(1.0), 0.0, r0);
    at0 += snr_db(s, sure_denoise(o0.noisy, std::sqrt(variance(o0.model)), Pointwise{}).estimate);
    RngStream r5(1, 4'000'000 + t);
    const auto o5 = add_noise(s, GaussianNoise(1.0), -5.0, r5);
    at_minus5 += snr_db(s, sure_denoise(o5.noisy, std::sqrt(variance(o5.model)), Pointwise{}).estimate);
  }
  EXPECT_NEAR(at0 / 100.0, 4.71, 0.5);
  EXPECT_NEAR(at_minus5 / 100.0, -0.27, 0.5);
}

TEST(SureDenoise, ClampsSmallCoefficients) {
  DenoiseOptions options;
  options.domain = Domain::transform;
  const Signal c = {0.5, -1.0, 2.0, 0.0, -4.0};
  const auto r = sure_denoise(c, 1.0, Pointwise{}, options);
  EXPECT_EQ(r.gains[0], 0.0);
  EXPECT_EQ(r.gains[1], 0.0);
  EXPECT_DOUBLE_EQ(r.gains[2], 0.75);
  EXPECT_EQ(r.gains[3], 0.0);
  EXPECT_DOUBLE_EQ(r.gains[4], 1.0 - 1.0 / 16.0);
}

TEST(SureDenoise, SubbandClosedForm) {
  DenoiseOptions options;
  options.domain = Domain::transform;
  const Signal c = {2.0, 2.0, 0.5, 0.5, 3.0};
  const auto r = sure_denoise(c, 1.0, Subband{2, std::nullopt}, options);
  ASSERT_EQ(r.gains.size(), 3u);
  EXPECT_DOUBLE_EQ(r.gains[0], 0.75);
  EXPECT_EQ(r.gains[1], 0.0);
  EXPECT_DOUBLE_EQ(r.gains[2], 1.0 - 1.0 / 9.0);
}

TEST(SureDenoise, ClosedFormMatchesGridSearch) {
  for (double x = 0.05; x < 12.0; x += 0.173) {
    const double grid = grid_minimize([&](double a) { return sure_pointwise_risk(x, a, 1.0); }, 1001);
    const double closed = std::clamp(1.0 - 1.0 / (x * x), 0.0, 1.0);
    EXPECT_NEAR(grid, closed, 1e-3 + 1e-12) << "x=" << x;
  }
}

TEST(SoftThreshold, Definition) {
  EXPECT_DOUBLE_EQ(universal_threshold(4096, 1.0), std::sqrt(2.0 * std::log(4096.0)));
  EXPECT_NEAR(universal_threshold(4096, 1.0), 4.0787, 1e-4);
  EXPECT_DOUBLE_EQ(universal_threshold(4096, 2.5), 2.5 * universal_threshold(4096, 1.0));
  EXPECT_DOUBLE_EQ(soft_threshold(5.0, 2.0), 3.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-1.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-5.0, 2.0), -3.0);
  EXPECT_THROW(universal_threshold(1, 1.0), DomainError);
}

TEST(SoftThreshold, DenoiseAppliesInTransformDomain) {
  RngStream rng(5, 0);
  const auto obs = add_noise(harmonic_gen(512), GaussianNoise(1.0), 5.0, rng);
  const double sigma = std::sqrt(variance(obs.model));
  const auto r = soft_threshold_denoise(obs.noisy, sigma);
  const Signal c = dct_forward(obs.noisy);
  const Signal out = dct_forward(r.estimate);
  const double tau = universal_threshold(512, sigma);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(out[i], soft_threshold(c[i], tau), 1e-10);
}

TEST(SoftThreshold, DominatedByPointwiseMpe) {
  const Signal& s = piece_regular();
  double soft = 0.0;
  double mpe = 0.0;
  for (std::size_t t = 0; t < 100; ++t) {
    RngStream rng(1, 5'000'000 + t);
    const auto obs = add_noise(s, GaussianNoise(1.0), 5.0, rng);
    const double sigma = std::sqrt(variance(obs.model));
    soft += snr_db(s, soft_threshold_denoise(obs.noisy, sigma).estimate);
    mpe += snr_db(s, denoise_pointwise(obs.noisy, Mpe{3.0 * sigma}, obs.model).estimate);
  }
  EXPECT_LT(soft, mpe);
}

TEST(MlAverage, Basics) {
  const Signal x = {1.0, -2.0, 3.5};
  EXPECT_EQ(ml_average(MultiObservationSet({x})), x);
  EXPECT_EQ(ml_average(MultiObservationSet({x, x, x, x})), x);
  const Signal y = {3.0, 0.0, -1.5};
  const Signal z = {-1.0, 4.0, 0.0};
  const Signal avg = ml_average(MultiObservationSet({x, y, z}));
  const Signal permuted = ml_average(MultiObservationSet({z, x, y}));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(avg[i], (x[i] + y[i] + z[i]) / 3.0, 1e-15);
    EXPECT_NEAR(avg[i], permuted[i], 1e-15);
  }
  EXPECT_THROW(MultiObservationSet({}), DomainError);
  EXPECT_THROW(MultiObservationSet({x, Signal{1.0}}), DomainError);
}

TEST(MlAverage, ResidualVarianceShrinks) {
  const std::size_t n = 10000;
  const std::size_t m = 100;
  const Signal clean(n, 0.0);
  RngStream rng(6, 0);
  std::vector<Signal> copies;
  for (std::size_t i = 0; i < m; ++i) copies.push_back(sample(GaussianNoise(2.0), n, rng));
  const Signal avg = ml_average(MultiObservationSet(copies));
  double ss = 0.0;
  for (double v : avg) ss += v * v;
  const double var = ss / n;
  // Target 4/100 with a 3-sigma band for the variance estimate.
  EXPECT_NEAR(var, 0.04, 3.0 * 0.04 * std::sqrt(2.0 / n));
}

TEST(MlL1, SingleObservationReduction) {
  RngStream rng(7, 0);
  const auto obs = add_noise(harmonic_gen(1024), GaussianNoise(1.0), 5.0, rng);
  const double sigma = std::sqrt(variance(obs.model));
  const auto a = ml_l1_denoise(MultiObservationSet({obs.noisy}), sigma, false, 1);
  const auto b = denoise_pointwise(obs.noisy, ExpectedL1{}, GaussianNoise(sigma));
  EXPECT_EQ(a.gains, b.gains);
  EXPECT_EQ(a.estimate, b.estimate);
  const auto it = ml_l1_denoise(MultiObservationSet({obs.noisy}), sigma, true, 5);
  EXPECT_EQ(it.gains, iterate_l1(obs.noisy, GaussianNoise(sigma), 5).gains);
}

TEST(MlL1, LargeMGainsApproachOne) {
  const Signal clean = {40.0, -25.0, 60.0, 0.0, 30.0, -45.0, 80.0, 20.0};
  DenoiseOptions options;
  options.domain = Domain::transform;
  RngStream rng(8, 0);
  std::vector<Signal> copies;
  for (int m = 0; m < 400; ++m) {
    Signal x = clean;
    for (double& v : x) v += rng.normal();
    copies.push_back(std::move(x));
  }
  const auto r = ml_l1_denoise(MultiObservationSet(copies), 1.0, false, 1, options);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] != 0.0) EXPECT_GT(r.gains[i], 0.99) << i;
  }
}
