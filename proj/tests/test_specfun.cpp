#include <gtest/gtest.h>

#include <cmath>

#include "rslab/errors.hpp"
#include "rslab/specfun.hpp"

using namespace rslab;

// Reference values from scipy.special / scipy.stats.

TEST(Normal, Cdf) {
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(-8.0) / 6.22096057427174e-16, 1.0, 1e-12);
  EXPECT_NEAR(normal_cdf(-1.5), 0.06680720126885807, 1e-15);
  EXPECT_NEAR(normal_cdf(0.3), 0.6179114221889526, 1e-15);
  EXPECT_NEAR(normal_cdf(5.0), 0.9999997133484281, 1e-15);
  EXPECT_NEAR(normal_sf(8.0) / 6.22096057427174e-16, 1.0, 1e-12);
}

TEST(Normal, Quantile) {
  EXPECT_EQ(normal_quantile(0.5), 0.0);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(0.001), -3.090232306167813, 1e-12);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-11);
  EXPECT_NEAR(normal_quantile(0.999), -normal_quantile(0.001), 1e-12);
  EXPECT_THROW(normal_quantile(0.0), DomainError);
  EXPECT_THROW(normal_quantile(1.0), DomainError);
  EXPECT_THROW(normal_quantile(std::nan("")), DomainError);
}

TEST(Normal, RoundTripGrid) {
  double prev = -1e300;
  for (int i = 0; i < 10000; ++i) {
    const double p = 1e-10 + (1.0 - 2e-10) * i / 9999.0;
    const double q = normal_quantile(p);
    EXPECT_LE(std::fabs(normal_cdf(q) - p), 1e-12) << p;
    EXPECT_GT(q, prev);
    prev = q;
  }
}

TEST(Gamma, LogGamma) {
  EXPECT_NEAR(log_gamma(0.5), 0.5723649429247, 1e-12);
  EXPECT_NEAR(log_gamma(123.4), 469.3360974421906, 1e-10);
}

TEST(Gamma, UpperIncomplete) {
  EXPECT_EQ(reg_inc_gamma_upper(3.0, 0.0), 1.0);
  EXPECT_NEAR(reg_inc_gamma_upper(2.5, 1.7), 0.6385699231037951, 1e-13);
  EXPECT_NEAR(reg_inc_gamma_upper(100.0, 90.0), 0.84177901081357, 1e-12);
  EXPECT_NEAR(reg_inc_gamma_upper(0.5, 10.0) / 7.744216431044088e-06, 1.0, 1e-10);
  EXPECT_NEAR(reg_inc_gamma_upper(8192.0, 8000.0), 0.9835963397974947, 1e-11);
  EXPECT_NEAR(reg_inc_gamma_upper(1.0, 0.3), std::exp(-0.3), 1e-15);
  EXPECT_NEAR(reg_inc_gamma_lower(2.5, 1.7) + reg_inc_gamma_upper(2.5, 1.7), 1.0, 1e-15);
  EXPECT_NEAR(chi2_sf(3.2, 4), 0.5249309467861041, 1e-13);
  EXPECT_THROW(reg_inc_gamma_upper(0.0, 1.0), DomainError);
  EXPECT_THROW(reg_inc_gamma_upper(1.0, -1.0), DomainError);
}

TEST(Beta, Incomplete) {
  EXPECT_NEAR(reg_inc_beta(2.0, 3.0, 0.5), 0.6875, 1e-14);
  EXPECT_NEAR(reg_inc_beta(0.5, 0.5, 0.3), 0.36901011956554536, 1e-13);
  EXPECT_NEAR(reg_inc_beta(30.0, 12.0, 0.8), 0.8978419816628718, 1e-12);
  EXPECT_NEAR(reg_inc_beta(1000.0, 500.0, 0.66), 0.2904999354098662, 1e-10);
  for (double x : {0.0, 0.1, 0.37, 0.9, 1.0}) EXPECT_NEAR(reg_inc_beta(1.0, 1.0, x), x, 1e-15);
}

TEST(Beta, Reflection) {
  for (double a : {0.3, 1.0, 2.5, 17.0, 400.0}) {
    for (double b : {0.7, 3.0, 55.0}) {
      for (double x : {0.01, 0.2, 0.5, 0.77, 0.999}) {
        EXPECT_NEAR(reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1.0 - x), 1.0, 1e-10);
      }
    }
  }
}

TEST(Binomial, Tail) {
  EXPECT_EQ(binom_tail_ge(0, 10, 0.3), 1.0);
  EXPECT_NEAR(binom_tail_ge(10, 10, 0.3), std::pow(0.3, 10), 1e-18);
  EXPECT_NEAR(binom_tail_ge(5, 10, 0.5), 0.623046875, 1e-13);
  EXPECT_NEAR(binom_tail_ge(30, 100, 0.3), 0.5376602639846402, 1e-13);
  EXPECT_NEAR(binom_tail_ge(700, 1000, 0.75), 0.9998520708254566, 1e-12);
  EXPECT_GT(binom_tail_ge(4, 10, 0.5), binom_tail_ge(5, 10, 0.5));
  EXPECT_LT(binom_tail_ge(5, 10, 0.4), binom_tail_ge(5, 10, 0.5));
}
