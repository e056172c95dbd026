#pragma once

// Normality tests against the standard normal the samplers claim to draw
// from, plus moment and QQ summaries.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rslab/report.hpp"

namespace rslab {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // population (divides by n)
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

// Needs at least 4 samples; zero variance throws DegenerateInputError.
Moments sample_moments(std::span<const double> samples);

inline constexpr std::size_t kShapiroMaxSamples = 5000;

// Royston's AS R94 algorithm, restricted to 3..5000 samples.
TestReport shapiro_wilk(std::span<const double> samples);
// Same approximation with no upper bound on the sample count. Royston's
// p-value fit was calibrated up to 5000; beyond that it is an extrapolation.
TestReport shapiro_wilk_unbounded(std::span<const double> samples);

// Skewness and kurtosis z-scores combined against χ²₂; needs 20 samples.
TestReport dagostino_k2(std::span<const double> samples);
// One-sample KS against Φ, p-value from Stephens' scaled Kolmogorov law.
TestReport kolmogorov_smirnov_normal(std::span<const double> samples);
// Cramér-von Mises ω² against Φ with the limiting distribution's p-value.
TestReport cramer_von_mises_normal(std::span<const double> samples);
TestReport jarque_bera(std::span<const double> samples);
// KS distance to a normal with estimated mean and sd (ddof=1); p-value
// from a cached Monte-Carlo null table.
TestReport lilliefors(std::span<const double> samples);

inline constexpr int kLillieforsSimulations = 10000;
inline constexpr std::size_t kLillieforsMaxTableSize = 5000;

// Sorted null distribution of the statistic for min(n, 5000) samples. Above
// 5000 both the observed and the tabulated statistics are scaled by
// √n - 0.01 + 0.85/√n before comparison.
const std::vector<double>& lilliefors_null_table(std::size_t n);

// Plot pairs (Φ⁻¹(p), empirical quantile) at p = (i - ½)/q, i = 1..q.
// Empirical quantiles interpolate the sorted sample at position n·p + ½.
std::vector<std::pair<double, double>> qq_data(std::span<const double> samples,
                                               std::size_t quantile_count);

enum class NormalityTest {
  ShapiroWilk,
  DAgostinoK2,
  KolmogorovSmirnov,
  CramerVonMises,
  JarqueBera,
  Lilliefors,
};

const std::vector<NormalityTest>& all_normality_tests();
std::string_view normality_test_name(NormalityTest test);
NormalityTest parse_normality_test(std::string_view name);

struct NormalityParams {
  // Let Shapiro-Wilk run past 5000 samples instead of refusing.
  bool unbounded_shapiro = false;
  double threshold = kDefaultPassThreshold;
};

bool normality_size_supported(NormalityTest test, std::size_t n, const NormalityParams& params = {});

TestReport run_normality_test(NormalityTest test, std::span<const double> samples,
                              const NormalityParams& params = {});

}  // namespace rslab
