#pragma once

// Randomised smoothing: Monte-Carlo prediction and certified L2 radius.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rslab/classifiers.hpp"
#include "rslab/generator.hpp"
#include "rslab/samplers.hpp"

namespace rslab {

inline constexpr int kAbstain = -1;

struct SmoothingConfig {
  double sigma = 0.25;
  std::size_t n0 = 100;
  std::size_t n = 10000;
  double conf_alpha = 0.001;
  // Per-coordinate noise; the Gaussian family with scale sigma is the
  // honest configuration.
  NoiseSampler sampler{NoiseFamily::Gaussian, 0.25, 0.0};

  // Throws ConfigError.
  void validate() const;
};

struct CertificationResult {
  int predicted = kAbstain;
  double pa_lower = 0.0;
  double radius = 0.0;
  std::vector<std::size_t> counts;  // tally over the n certification draws

  bool abstained() const { return predicted == kAbstain; }
};

// Class histogram of f(x + ε) over `draws` noise vectors.
std::vector<std::size_t> sample_counts(const Classifier& f, std::span<const double> x,
                                       const NoiseSampler& sampler, std::size_t draws, Generator& gen);

// Modal class over n0 draws; ties go to the lowest label.
int smoothed_select(const Classifier& f, std::span<const double> x, const SmoothingConfig& cfg,
                    Generator& gen);

// Lower end of the one-sided Clopper-Pearson interval: the conf_alpha
// quantile of Beta(k, n - k + 1).
double clopper_pearson_lower(std::int64_t k, std::int64_t n, double conf_alpha);

// Selection on n0 draws, estimation on n fresh draws from the same
// generator; abstains when the lower bound is not above ½.
CertificationResult certify(const Classifier& f, std::span<const double> x, const SmoothingConfig& cfg,
                            Generator& gen);

// One side of a paired comparison. Point i draws from stream
// `seed.stream + i`.
struct CertificationArm {
  SmoothingConfig cfg;
  TamperConfig tamper;
  SeedMaterial seed;
};

struct CertificationPair {
  CertificationResult baseline;
  CertificationResult attacked;
};

std::vector<CertificationPair> certify_batch(const Classifier& f,
                                             const std::vector<std::vector<double>>& points,
                                             const CertificationArm& baseline,
                                             const CertificationArm& attacked, unsigned threads = 1);

}  // namespace rslab
