#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rslab/errors.hpp"
#include "rslab/generator.hpp"
#include "rslab/normality.hpp"
#include "rslab/specfun.hpp"
#include "rslab/ziggurat.hpp"

using namespace rslab;

namespace {

std::vector<double> sample_a(int n) {
  std::vector<double> x;
  for (int i = 1; i <= n; ++i) x.push_back(2.0 * std::pow(std::cos(0.7 * i), 3) + 0.1 * i / n);
  return x;
}

std::vector<double> sample_b(int n) {
  std::vector<double> x;
  for (int i = 1; i <= n; ++i) x.push_back(std::sin(1.3 * i) + 0.5 * std::pow(std::sin(0.37 * i), 2));
  return x;
}

struct Expected {
  const char* label;
  std::vector<double> (*gen)(int);
  int n;
  double w, pw, k2, pk2, ks, pks, cvm, pcvm, jb, pjb, lf;
  double mean, var, skew, kurt;
};

// scipy.stats / statsmodels; KS and CvM p-values from the Stephens-scaled
// Kolmogorov law and the limiting ω² law.
const Expected kCases[] = {
    {"A50", sample_a, 50, 0.91862667471907433, 0.0021040276434153653, 1.44166012767591, 0.4863483881554751,
     0.15559194375107638, 0.16170577279333889, 0.24030718606261744, 0.20128460109092339,
     1.0740147551106944, 0.58449480996386516, 0.16153431255056416, -0.0041389435401227902,
     1.2458266484634877, 0.050714879497708858, -0.71080172090623472},
    {"A200", sample_a, 200, 0.94935888078038899, 1.6374199905902785e-06, 7.7635483444051934,
     0.020614219543669151, 0.10995836611733278, 0.014538132330958558, 0.55385185148411464,
     0.029148710431769365, 3.8297701734802865, 0.14735876508932363, 0.090463029905368919,
     0.054688622449898278, 1.2404793481841736, -0.010885248969641636, -0.67756805284569754},
    {"B50", sample_b, 50, 0.93626056078678666, 0.0096097316756361389, 20.345268908977129,
     3.820155048783876e-05, 0.17899075560989836, 0.071741810343294618, 0.59294923712870484,
     0.023299774159395659, 3.7931898443381815, 0.15007878008795214, 0.10622470675417695,
     0.28355579878043513, 0.51604876193436644, -0.098743915417215861, -1.3348144747322146},
    {"B200", sample_b, 200, 0.94005663307650489, 2.3180605010491681e-07, 238.41043322382606,
     1.6975876668106291e-52, 0.16163197129661627, 4.7894964272260888e-05, 1.8739598944041935,
     2.4553990049969165e-05, 14.967637793670566, 0.000562106684038833, 0.091213752771997947,
     0.25915632665215821, 0.5323059196255544, -0.020690037873801723, -1.3395537408299789},
};

void expect_rel(double got, double want, double rel) {
  EXPECT_NEAR(got, want, rel * std::fabs(want)) << "want " << want;
}

}  // namespace

TEST(Normality, MatchesReferenceValues) {
  for (const auto& c : kCases) {
    SCOPED_TRACE(c.label);
    const auto x = c.gen(c.n);
    auto sw = shapiro_wilk(x);
    expect_rel(sw.statistic, c.w, 1e-6);
    expect_rel(sw.p_value, c.pw, 1e-3);
    auto k2 = dagostino_k2(x);
    expect_rel(k2.statistic, c.k2, 1e-9);
    expect_rel(k2.p_value, c.pk2, 1e-8);
    auto ks = kolmogorov_smirnov_normal(x);
    expect_rel(ks.statistic, c.ks, 1e-12);
    expect_rel(ks.p_value, c.pks, 1e-8);
    auto cvm = cramer_von_mises_normal(x);
    expect_rel(cvm.statistic, c.cvm, 1e-12);
    expect_rel(cvm.p_value, c.pcvm, 1e-5);
    auto jb = jarque_bera(x);
    expect_rel(jb.statistic, c.jb, 1e-9);
    expect_rel(jb.p_value, c.pjb, 1e-9);
    expect_rel(lilliefors(x).statistic, c.lf, 1e-12);
    auto mo = sample_moments(x);
    EXPECT_NEAR(mo.mean, c.mean, 1e-12);
    expect_rel(mo.variance, c.var, 1e-12);
    EXPECT_NEAR(mo.skewness, c.skew, 1e-10);
    EXPECT_NEAR(mo.excess_kurtosis, c.kurt, 1e-10);
  }
}

TEST(Moments, TwoAndThreePoint) {
  std::vector<double> two, three;
  for (int i = 0; i < 30; ++i) {
    two.push_back(i % 2 ? 1.0 : -1.0);
    three.push_back(static_cast<double>(i % 3) - 1.0);
  }
  auto m2 = sample_moments(two);
  EXPECT_NEAR(m2.skewness, 0.0, 1e-15);
  EXPECT_NEAR(m2.excess_kurtosis, -2.0, 1e-12);
  auto m3 = sample_moments(three);
  EXPECT_NEAR(m3.variance, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(m3.excess_kurtosis, -1.5, 1e-12);
  EXPECT_THROW(sample_moments(std::vector<double>(10, 2.0)), DegenerateInputError);
  EXPECT_THROW(sample_moments(std::vector<double>{1.0, 2.0, 3.0}), InputSizeError);
}

TEST(Moments, HalfNormalSkewness) {
  Generator gen(SeedMaterial{11, 0});
  std::vector<double> x(1000000);
  for (double& v : x) v = std::fabs(ziggurat_normal(gen));
  const double pi = 3.14159265358979323846;
  const double want = std::sqrt(2.0) * (4.0 - pi) / std::pow(pi - 2.0, 1.5);
  EXPECT_NEAR(sample_moments(x).skewness, want, 0.02);
}

TEST(JarqueBera, TwoPointClosedForm) {
  std::vector<double> x;
  for (int i = 0; i < 60; ++i) x.push_back(i % 2 ? 1.0 : -1.0);
  EXPECT_NEAR(jarque_bera(x).statistic, 10.0, 1e-10);
}

TEST(KolmogorovSmirnov, QuantileGridDistance) {
  const int n = 400;
  std::vector<double> x;
  for (int i = 1; i <= n; ++i) x.push_back(normal_quantile((i - 0.5) / n));
  EXPECT_NEAR(kolmogorov_smirnov_normal(x).statistic, 0.5 / n, 1e-12);
}

TEST(ShapiroWilk, AffineInvariant) {
  auto x = sample_b(300);
  std::vector<double> y;
  for (double v : x) y.push_back(2.0 * v + 3.0);
  EXPECT_NEAR(shapiro_wilk(x).statistic, shapiro_wilk(y).statistic, 1e-12);
}

TEST(ShapiroWilk, SizeLimits) {
  EXPECT_THROW(shapiro_wilk(std::vector<double>{1.0, 2.0}), InputSizeError);
  EXPECT_THROW(shapiro_wilk(sample_a(5001)), InputSizeError);
  EXPECT_NO_THROW(shapiro_wilk_unbounded(sample_a(5001)));
  EXPECT_THROW(shapiro_wilk(std::vector<double>(50, 1.0)), DegenerateInputError);
}

TEST(ShapiroWilk, SmallSamples) {
  // scipy.stats.shapiro([1, 2, 4]).
  auto r3 = shapiro_wilk(std::vector<double>{1.0, 2.0, 4.0});
  EXPECT_NEAR(r3.statistic, 0.9642857142857143, 1e-9);
  EXPECT_NEAR(r3.p_value, 0.6368868450289689, 1e-6);
}

TEST(ShapiroWilk, NullCalibration) {
  int rejections = 0;
  for (int t = 0; t < 100; ++t) {
    Generator gen(SeedMaterial{2024, static_cast<u128>(t)});
    std::vector<double> x(5000);
    for (double& v : x) v = ziggurat_normal(gen);
    rejections += shapiro_wilk(x).p_value < 0.01 ? 1 : 0;
  }
  EXPECT_LE(rejections, 10);
}

TEST(Lilliefors, PValueAgreesWithTables) {
  // statsmodels' tabulated p-values are 0.0025 (A50) and 0.178 (B50).
  EXPECT_NEAR(lilliefors(sample_a(50)).p_value, 0.0025, 0.002);
  EXPECT_NEAR(lilliefors(sample_b(50)).p_value, 0.178, 0.02);
}

TEST(Lilliefors, TableIsCachedAndSorted) {
  const auto& t1 = lilliefors_null_table(64);
  const auto& t2 = lilliefors_null_table(64);
  EXPECT_EQ(&t1, &t2);
  EXPECT_EQ(t1.size(), static_cast<std::size_t>(kLillieforsSimulations));
  EXPECT_TRUE(std::is_sorted(t1.begin(), t1.end()));
  EXPECT_EQ(&lilliefors_null_table(6000), &lilliefors_null_table(5000));
}

TEST(QQ, ExactQuantilesOnDiagonal) {
  const int n = 200;
  std::vector<double> x;
  for (int i = 1; i <= n; ++i) x.push_back(normal_quantile((i - 0.5) / n));
  for (auto [th, emp] : qq_data(x, n)) EXPECT_NEAR(th, emp, 1e-12);
  EXPECT_EQ(qq_data(x, 50).size(), 50u);
  EXPECT_THROW(qq_data(x, n + 1), InputSizeError);
}

TEST(QQ, BaselineCloseToDiagonal) {
  Generator gen(SeedMaterial{7, 3});
  std::vector<double> x(100000);
  for (double& v : x) v = ziggurat_normal(gen);
  auto pairs = qq_data(x, 1000);
  double worst = 0.0;
  for (std::size_t i = 10; i < 990; ++i) worst = std::max(worst, std::fabs(pairs[i].first - pairs[i].second));
  EXPECT_LT(worst, 0.05);
}

TEST(QQ, HalfNormalLeftHalfNonNegative) {
  Generator gen(SeedMaterial{7, 4});
  std::vector<double> x(10000);
  for (double& v : x) v = std::fabs(ziggurat_normal(gen));
  auto pairs = qq_data(x, 100);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_GE(pairs[i].second, 0.0);
}

TEST(Registry, RoundTripAndSizes) {
  for (auto t : all_normality_tests()) EXPECT_EQ(parse_normality_test(normality_test_name(t)), t);
  EXPECT_FALSE(normality_size_supported(NormalityTest::ShapiroWilk, 10000));
  NormalityParams p;
  p.unbounded_shapiro = true;
  EXPECT_TRUE(normality_size_supported(NormalityTest::ShapiroWilk, 10000, p));
  EXPECT_FALSE(normality_size_supported(NormalityTest::DAgostinoK2, 19));
}
