#pragma once

#include <string>
#include <string_view>

#include "rslab/generator.hpp"

namespace rslab {

enum class NoiseFamily { Gaussian, Laplace, HalfNormal, Uniform, Bernoulli };

std::string_view family_name(NoiseFamily family);
// CLI spelling: gauss, laplace, halfnormal, uniform, bernoulli.
NoiseFamily parse_family(std::string_view name);

// A real-valued noise distribution driven by a Generator. `scale` is σ for
// Gaussian and HalfNormal, b for Laplace and the half-width for Uniform;
// Bernoulli ignores it and yields {0, 1}.
struct NoiseSampler {
  NoiseFamily family = NoiseFamily::Gaussian;
  double scale = 0.25;
  double location = 0.0;

  // Throws ConfigError when scale <= 0 for a scaled family.
  void validate() const;

  double operator()(Generator& gen) const;

  friend bool operator==(const NoiseSampler&, const NoiseSampler&) = default;
};

// Inverse-CDF Laplace transform of a unit uniform u: -b sgn(u-½) ln(1-2|u-½|).
double laplace_from_uniform(double u, double b);

double sample_laplace(Generator& gen, double b);
double sample_half_normal(Generator& gen, double sigma);
double sample_uniform(Generator& gen, double lo, double hi);
// High bit of one word.
int sample_bernoulli(Generator& gen);

}  // namespace rslab
