#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <gtest/gtest.h>

#include "mpe/error.hpp"
#include "mpe/noise_model.hpp"
#include "mpe/special_functions.hpp"
#include "oracles.hpp"

using namespace mpe;

TEST(QFunction, CentreAndTail) {
  EXPECT_DOUBLE_EQ(q_function(0.0), 0.5);
  EXPECT_LT(q_function(10.0), 1e-20);
  EXPECT_GT(q_function(10.0), 0.0);
}

TEST(QFunction, MatchesQuadrature) {
  EXPECT_NEAR(q_function(1.6449), 0.05, 1e-5);
  for (double u : {-3.0, -0.7, 0.0, 0.3, 1.6449, 2.5, 5.0, 8.0}) {
    const double ref = oracle::q_function(u);
    EXPECT_NEAR(q_function(u), ref, 1e-13 * ref) << "u=" << u;
  }
}

TEST(QFunction, ComplementSymmetry) {
  for (double u = -12.0; u <= 12.0; u += 0.05) {
    EXPECT_NEAR(q_function(u) + q_function(-u), 1.0, 1e-12) << "u=" << u;
  }
}

TEST(QFunction, RejectsNonFinite) {
  EXPECT_THROW(q_function(std::numeric_limits<double>::quiet_NaN()), DomainError);
  EXPECT_THROW(q_function(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(NoiseCdf, LaplacianClosedForm) {
  const NoiseModel lap = LaplacianNoise(1.0);
  EXPECT_DOUBLE_EQ(cdf(lap, 0.0), 0.5);
  EXPECT_NEAR(cdf(lap, std::log(2.0)), 0.75, 1e-15);
}

TEST(NoiseCdf, StudentTMatchesQuadrature) {
  EXPECT_NEAR(cdf(StudentTNoise(3.0), 1.0), 0.8045, 5e-5);
  EXPECT_NEAR(cdf(StudentTNoise(3.0), 1.0), oracle::student_t_cdf(1.0, 3.0), 1e-12);
  const double big = cdf(StudentTNoise(1e6), 1.0);
  EXPECT_NEAR(big, oracle::student_t_cdf(1.0, 1e6), 1e-10);
  EXPECT_NEAR(big, 1.0 - q_function(1.0), 1e-6);
}

TEST(NoiseCdf, StudentTScaledArgument) {
  const NoiseModel t = StudentTNoise(5.0, 2.0);
  EXPECT_NEAR(cdf(t, 3.0), oracle::student_t_cdf(1.5, 5.0), 1e-12);
}

TEST(NoiseCdf, MonotoneOnDenseGrid) {
  const std::vector<NoiseModel> models = {
      GaussianNoise(1.3), LaplacianNoise(0.7), StudentTNoise(3.0), StudentTNoise(40.0),
      GmmModel({{0.3, -1.0, 0.4}, {0.5, 0.2, 0.8}, {0.2, 2.0, 0.3}})};
  for (const auto& m : models) {
    double prev = 0.0;
    for (double w = -30.0; w <= 30.0; w += 0.01) {
      const double f = cdf(m, w);
      ASSERT_GE(f, prev) << family_name(m) << " w=" << w;
      ASSERT_LE(f, 1.0);
      prev = f;
    }
    EXPECT_LT(cdf(m, -1e3), 1e-6);
    EXPECT_GT(cdf(m, 1e3), 1.0 - 1e-6);
  }
}

TEST(NoiseCdf, ZeroMeanSymmetry) {
  for (const NoiseModel& m : {NoiseModel(LaplacianNoise(0.9)), NoiseModel(StudentTNoise(3.5)),
                              NoiseModel(StudentTNoise(12.0, 0.5))}) {
    for (double w = 0.0; w <= 25.0; w += 0.125) {
      EXPECT_NEAR(cdf(m, -w), 1.0 - cdf(m, w), 1e-12) << family_name(m) << " w=" << w;
    }
  }
}

TEST(NoiseCdf, SurvivalKeepsUpperTail) {
  EXPECT_NEAR(survival(GaussianNoise(1.0), 9.0), q_function(9.0), 1e-30);
  const double tail = survival(StudentTNoise(4.0), 200.0);
  EXPECT_NEAR(tail, oracle::integrate_to_inf([](double t) { return oracle::student_t_pdf(t, 4.0); }, 200.0),
              1e-10 * tail);
  EXPECT_NEAR(survival(LaplacianNoise(1.0), 30.0), 0.5 * std::exp(-30.0), 1e-25);
}

TEST(NoiseCdf, SingleComponentGmmIsGaussian) {
  const NoiseModel g = GaussianNoise(1.7);
  const NoiseModel mix = GmmModel({{1.0, 0.0, 1.7}});
  for (double w = -10.0; w <= 10.0; w += 0.1) {
    EXPECT_NEAR(cdf(mix, w), cdf(g, w), 1e-12);
    EXPECT_NEAR(pdf(mix, w), pdf(g, w), 1e-12);
  }
}

TEST(Hypergeometric, ZeroArgument) {
  EXPECT_DOUBLE_EQ(hypergeometric_2f1(0.5, 2.0, 1.5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(hypergeometric_2f1(-3.2, 7.0, 0.25, 0.0), 1.0);
}

TEST(Hypergeometric, SeriesRegion) {
  // Inside |z| < 1 the raw series converges; 200 terms in long double.
  for (double z : {-0.1, -0.3, -0.45, -0.6}) {
    const double ref = static_cast<double>(oracle::hypergeometric_series(0.5, 2.0, 1.5, z, 200));
    EXPECT_NEAR(hypergeometric_2f1(0.5, 2.0, 1.5, z), ref, 1e-12 * std::abs(ref)) << "z=" << z;
  }
}

TEST(Hypergeometric, UnitArgumentMatchesEulerIntegral) {
  // At z = -1 the series terms do not decay; the Euler integral (with a and
  // b exchanged so that c > b > 0) is the reference.
  const double ref = oracle::hypergeometric_euler(2.0, 0.5, 1.5, -1.0);
  EXPECT_NEAR(hypergeometric_2f1(0.5, 2.0, 1.5, -1.0), ref, 1e-10 * ref);
  // Closed form: 2F1(1/2, 2; 3/2; -x^2) = (x/(1+x^2) + atan x) / (2x) at x = 1.
  EXPECT_NEAR(ref, 0.25 + std::numbers::pi / 8.0, 1e-12);
}

TEST(Hypergeometric, LargeArgumentMatchesStudentTQuadrature) {
  // For dof = 3, F(w) = 1/2 + w C 2F1(1/2, 2; 3/2; -w^2/3); z = -100 at w = sqrt(300).
  const double dof = 3.0;
  const double w = std::sqrt(300.0);
  const double c = std::exp(std::lgamma(2.0) - std::lgamma(1.5)) / std::sqrt(dof * std::numbers::pi);
  const double ref = (oracle::student_t_cdf(w, dof) - 0.5) / (w * c);
  EXPECT_NEAR(hypergeometric_2f1(0.5, 2.0, 1.5, -100.0), ref, 1e-10 * ref);
}

TEST(Hypergeometric, EulerIntegralGrid) {
  struct Case {
    double a, b, c;
  };
  for (const Case p : {Case{0.5, 1.0, 1.5}, Case{1.3, 0.7, 2.1}, Case{0.5, 0.5, 1.5},
                       Case{2.5, 1.5, 3.7}, Case{-0.4, 0.6, 1.9}}) {
    for (double z : {-0.2, -0.8, -1.5, -7.0, -60.0, -2500.0}) {
      const double ref = oracle::hypergeometric_euler(p.a, p.b, p.c, z);
      EXPECT_NEAR(hypergeometric_2f1(p.a, p.b, p.c, z), ref, 1e-10 * std::abs(ref))
          << p.a << ',' << p.b << ',' << p.c << " z=" << z;
    }
  }
}

TEST(Hypergeometric, RejectsOutsideDomain) {
  EXPECT_THROW(hypergeometric_2f1(0.5, 1.0, 1.5, 0.1), DomainError);
  EXPECT_THROW(hypergeometric_2f1(0.5, 1.0, 0.0, -0.5), DomainError);
  EXPECT_THROW(hypergeometric_2f1(0.5, 1.0, -2.0, -0.5), DomainError);
}

TEST(StudentTCdf, QuadratureGrid) {
  for (double dof : {3.0, 4.0, 10.0}) {
    for (double w : {-40.0, -6.0, -2.0, -0.5, 0.0, 0.25, 1.0, 3.0, 9.0, 75.0}) {
      EXPECT_NEAR(student_t_cdf(w, dof), oracle::student_t_cdf(w, dof), 1e-12)
          << "dof=" << dof << " w=" << w;
    }
  }
}

TEST(NoncentralChi2, SpecialCases) {
  EXPECT_NEAR(noncentral_chi2_cdf(2.0, 2, 0.0), 1.0 - std::exp(-1.0), 1e-15);
  for (int k : {1, 3, 16}) {
    EXPECT_EQ(noncentral_chi2_cdf(0.0, k, 5.0), 0.0);
    EXPECT_EQ(noncentral_chi2_sf(0.0, k, 5.0), 1.0);
  }
}

TEST(NoncentralChi2, CentralReduction) {
  for (int k : {1, 2, 5, 16, 40}) {
    for (double theta : {0.1, 1.0, 4.0, 17.0, 60.0}) {
      EXPECT_NEAR(noncentral_chi2_cdf(theta, k, 0.0), regularized_gamma_p(0.5 * k, 0.5 * theta), 1e-10);
    }
  }
}

TEST(NoncentralChi2, MatchesMonteCarlo) {
  // Sum of (z_i + mu_i)^2 with sum mu_i^2 = 4 spread over the 8 coordinates.
  const double theta = 10.0;
  const auto est = oracle::monte_carlo(1'000'000, 99, [&](std::mt19937_64& rng) {
    std::normal_distribution<double> n01;
    double x = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double v = n01(rng) + std::sqrt(0.5);
      x += v * v;
    }
    return x <= theta ? 1.0 : 0.0;
  });
  EXPECT_NEAR(noncentral_chi2_cdf(theta, 8, 4.0), est.mean, 3.0 * est.stderr_);
}

TEST(NoncentralChi2, MatchesIndependentImplementation) {
  for (int k : {1, 2, 4, 16, 40, 64}) {
    for (double lambda : {0.5, 3.0, 25.0, 400.0}) {
      boost::math::non_central_chi_squared dist(k, lambda);
      for (double q : {0.01, 0.2, 0.5, 0.9, 0.999}) {
        const double theta = boost::math::quantile(dist, q);
        const double ref = boost::math::cdf(dist, theta);
        const double ref_sf = boost::math::cdf(boost::math::complement(dist, theta));
        EXPECT_NEAR(noncentral_chi2_cdf(theta, k, lambda), ref, 1e-10) << k << ' ' << lambda << ' ' << q;
        EXPECT_NEAR(noncentral_chi2_sf(theta, k, lambda), ref_sf, 1e-10 * std::max(ref_sf, 1e-3));
      }
    }
  }
}

TEST(NoncentralChi2, CdfAndSurvivalComplement) {
  for (double theta : {0.5, 8.0, 90.0}) {
    for (double lambda : {0.0, 2.0, 150.0}) {
      EXPECT_NEAR(noncentral_chi2_cdf(theta, 6, lambda) + noncentral_chi2_sf(theta, 6, lambda), 1.0, 1e-13);
    }
  }
}

TEST(NoncentralChi2, RejectsBadArguments) {
  EXPECT_THROW(noncentral_chi2_cdf(1.0, 0, 1.0), DomainError);
  EXPECT_THROW(noncentral_chi2_cdf(1.0, 2, -1.0), DomainError);
  EXPECT_THROW(noncentral_chi2_sf(std::numeric_limits<double>::quiet_NaN(), 2, 1.0), DomainError);
}
