#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rslab/classifiers.hpp"
#include "rslab/errors.hpp"
#include "rslab/smoothing.hpp"
#include "rslab/specfun.hpp"

using namespace rslab;

namespace {

SmoothingConfig default_cfg() {
  SmoothingConfig cfg;
  cfg.sampler = {NoiseFamily::Gaussian, cfg.sigma, 0.0};
  return cfg;
}

}  // namespace

TEST(ClopperPearson, Boundaries) {
  EXPECT_EQ(clopper_pearson_lower(0, 100, 0.001), 0.0);
  EXPECT_NEAR(clopper_pearson_lower(10000, 10000, 0.001), 0.9993095, 1e-7);
  EXPECT_NEAR(clopper_pearson_lower(7, 7, 0.05), std::pow(0.05, 1.0 / 7.0), 1e-15);
  EXPECT_THROW(clopper_pearson_lower(3, 2, 0.05), DomainError);
}

TEST(ClopperPearson, MatchesBinomialOracle) {
  const double p = clopper_pearson_lower(5, 10, 0.05);
  EXPECT_NEAR(binom_tail_ge(5, 10, p), 0.05, 1e-9);
  for (int k = 1; k < 30; ++k) {
    EXPECT_LT(clopper_pearson_lower(k, 30, 0.001), clopper_pearson_lower(k + 1, 30, 0.001));
  }
}

TEST(Select, ConstantClassifier) {
  ConstantClassifier f(3, 2, 5);
  Generator gen(SeedMaterial{1, 0});
  std::vector<double> x = {0.0, 0.0};
  EXPECT_EQ(smoothed_select(f, x, default_cfg(), gen), 3);
}

TEST(Select, FarPointIsPositive) {
  LinearClassifier f({1.0}, 0.0);
  Generator gen(SeedMaterial{2, 0});
  std::vector<double> x = {2.5};
  EXPECT_EQ(smoothed_select(f, x, default_cfg(), gen), 1);
}

TEST(Select, TiesGoToLowestLabel) {
  // Noise-free Bernoulli draws are 0 or 1; with offset 0.5 the two
  // outcomes split the draws, and n0 = 2 forces frequent ties.
  NearestCentroidClassifier f({{0.0}, {1.0}});
  SmoothingConfig cfg = default_cfg();
  cfg.n0 = 2;
  cfg.sampler = {NoiseFamily::Bernoulli, 1.0, 0.0};
  std::vector<double> x = {0.0};
  Generator gen(SeedMaterial{3, 0});
  for (int i = 0; i < 200; ++i) {
    Generator probe = gen;
    auto counts = sample_counts(f, x, cfg.sampler, cfg.n0, probe);
    const int label = smoothed_select(f, x, cfg, gen);
    EXPECT_EQ(label, counts[1] > counts[0] ? 1 : 0);
  }
}

TEST(Certify, ConstantClassifierRadius) {
  ConstantClassifier f(1, 1, 2);
  Generator gen(SeedMaterial{4, 0});
  std::vector<double> x = {0.0};
  auto r = certify(f, x, default_cfg(), gen);
  EXPECT_EQ(r.predicted, 1);
  EXPECT_NEAR(r.pa_lower, 0.9993095, 1e-7);
  EXPECT_NEAR(r.radius, 0.25 * normal_quantile(std::pow(0.001, 1e-4)), 1e-12);
  EXPECT_NEAR(r.radius, 0.799, 0.001);
  EXPECT_EQ(r.counts[1], 10000u);
}

TEST(Certify, FairCoinAbstains) {
  LinearClassifier f({1.0}, 0.0);
  std::vector<double> x = {0.0};
  for (int s = 0; s < 20; ++s) {
    Generator gen(SeedMaterial{5, static_cast<u128>(s)});
    auto r = certify(f, x, default_cfg(), gen);
    EXPECT_TRUE(r.abstained());
    EXPECT_EQ(r.radius, 0.0);
    EXPECT_EQ(r.counts[0] + r.counts[1], 10000u);
  }
}

TEST(Certify, MarginHalfIsSound) {
  LinearClassifier f({0.6, 0.8}, 0.0);
  std::vector<double> x = {0.3, 0.4};  // margin 0.5
  SmoothingConfig cfg = default_cfg();
  cfg.n = 100000;
  Generator gen(SeedMaterial{6, 0});
  auto r = certify(f, x, cfg, gen);
  EXPECT_EQ(r.predicted, 1);
  EXPECT_LT(r.radius, 0.5);
  EXPECT_GT(r.radius, 0.45);
}

TEST(Certify, ScaleEquivariance) {
  LinearClassifier f1({1.0}, 0.1);
  LinearClassifier f2({1.0}, 0.2);
  SmoothingConfig c1 = default_cfg();
  SmoothingConfig c2 = default_cfg();
  c2.sigma = 0.5;
  c2.sampler.scale = 0.5;
  for (int s = 0; s < 5; ++s) {
    Generator g1(SeedMaterial{7, static_cast<u128>(s)});
    Generator g2(SeedMaterial{7, static_cast<u128>(s)});
    std::vector<double> x1 = {0.25}, x2 = {0.5};
    auto r1 = certify(f1, x1, c1, g1);
    auto r2 = certify(f2, x2, c2, g2);
    EXPECT_EQ(r1.counts, r2.counts);
    EXPECT_NEAR(r2.radius, 2.0 * r1.radius, 1e-12);
  }
}

TEST(Certify, ConfigValidation) {
  SmoothingConfig cfg = default_cfg();
  cfg.conf_alpha = 0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = default_cfg();
  cfg.n = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = default_cfg();
  cfg.sigma = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Batch, EmptyAndIdentity) {
  LinearClassifier f({1.0}, 0.0);
  CertificationArm arm{default_cfg(), {}, SeedMaterial{9, 0}};
  EXPECT_TRUE(certify_batch(f, {}, arm, arm).empty());
  std::vector<std::vector<double>> pts = {{0.1}, {0.2}, {-0.3}, {0.05}};
  for (const auto& p : certify_batch(f, pts, arm, arm)) {
    EXPECT_EQ(p.baseline.predicted, p.attacked.predicted);
    EXPECT_EQ(p.baseline.radius, p.attacked.radius);
  }
}

TEST(Batch, ParallelMatchesSerial) {
  LinearClassifier f({1.0}, 0.0);
  CertificationArm base{default_cfg(), {}, SeedMaterial{10, 0}};
  CertificationArm att{default_cfg(), TamperConfig::skewness(0), SeedMaterial{10, 1000}};
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({0.02 * i - 0.1});
  auto a = certify_batch(f, pts, base, att, 1);
  auto b = certify_batch(f, pts, base, att, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].baseline.counts, b[i].baseline.counts);
    EXPECT_EQ(a[i].attacked.counts, b[i].attacked.counts);
    EXPECT_EQ(a[i].attacked.radius, b[i].attacked.radius);
  }
}

TEST(Batch, SkewInflatesRadius) {
  LinearClassifier f({1.0}, 0.0);
  CertificationArm base{default_cfg(), {}, SeedMaterial{11, 0}};
  CertificationArm att{default_cfg(), TamperConfig::skewness(0), SeedMaterial{11, 5000}};
  std::vector<std::vector<double>> pts = {{0.1}, {0.15}, {0.2}};
  int inflated = 0;
  for (const auto& p : certify_batch(f, pts, base, att)) {
    if (!p.baseline.abstained() && p.attacked.radius > 2.0 * p.baseline.radius) ++inflated;
  }
  EXPECT_GT(inflated, 0);
}
