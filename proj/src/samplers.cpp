#include "rslab/samplers.hpp"

#include <cmath>

#include "rslab/errors.hpp"
#include "rslab/ziggurat.hpp"

namespace rslab {

std::string_view family_name(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::Gaussian: return "gauss";
    case NoiseFamily::Laplace: return "laplace";
    case NoiseFamily::HalfNormal: return "halfnormal";
    case NoiseFamily::Uniform: return "uniform";
    case NoiseFamily::Bernoulli: return "bernoulli";
  }
  return "?";
}

NoiseFamily parse_family(std::string_view name) {
  if (name == "gauss") return NoiseFamily::Gaussian;
  if (name == "laplace") return NoiseFamily::Laplace;
  if (name == "halfnormal") return NoiseFamily::HalfNormal;
  if (name == "uniform") return NoiseFamily::Uniform;
  if (name == "bernoulli") return NoiseFamily::Bernoulli;
  throw ConfigError("unknown sampler '" + std::string(name) + "'");
}

void NoiseSampler::validate() const {
  if (family != NoiseFamily::Bernoulli && !(scale > 0.0)) {
    throw ConfigError("noise scale must be positive");
  }
}

double NoiseSampler::operator()(Generator& gen) const {
  switch (family) {
    case NoiseFamily::Gaussian: return location + scale * ziggurat_normal(gen);
    case NoiseFamily::Laplace: return location + sample_laplace(gen, scale);
    case NoiseFamily::HalfNormal: return location + sample_half_normal(gen, scale);
    case NoiseFamily::Uniform:
      return sample_uniform(gen, location - scale, location + scale);
    case NoiseFamily::Bernoulli: return static_cast<double>(sample_bernoulli(gen));
  }
  return 0.0;
}

double laplace_from_uniform(double u, double b) {
  const double centred = u - 0.5;
  const double sign = centred < 0.0 ? -1.0 : (centred > 0.0 ? 1.0 : 0.0);
  return -b * sign * std::log1p(-2.0 * std::fabs(centred));
}

double sample_laplace(Generator& gen, double b) {
  for (;;) {
    const double u = u64_to_unit_double(gen.next_u64());
    // u == 0 puts ln(0) in the transform.
    if (u > 0.0) return laplace_from_uniform(u, b);
  }
}

double sample_half_normal(Generator& gen, double sigma) {
  return std::fabs(ziggurat_normal(gen)) * sigma;
}

double sample_uniform(Generator& gen, double lo, double hi) {
  return lo + (hi - lo) * u64_to_unit_double(gen.next_u64());
}

int sample_bernoulli(Generator& gen) { return static_cast<int>(gen.next_u64() >> 63); }

}  // namespace rslab
