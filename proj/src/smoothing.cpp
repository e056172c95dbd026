#include "rslab/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "rslab/errors.hpp"
#include "rslab/parallel.hpp"
#include "rslab/specfun.hpp"

namespace rslab {

void SmoothingConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  if (n0 == 0 || n == 0) throw ConfigError("n0 and n must be positive");
  if (!(conf_alpha > 0.0 && conf_alpha < 0.5)) throw ConfigError("conf_alpha must lie in (0, 0.5)");
  sampler.validate();
}

std::vector<std::size_t> sample_counts(const Classifier& f, std::span<const double> x,
                                       const NoiseSampler& sampler, std::size_t draws, Generator& gen) {
  if (x.size() != f.dimension()) throw ConfigError("point dimension does not match classifier");
  std::vector<std::size_t> counts(static_cast<std::size_t>(f.num_classes()), 0);
  std::vector<double> noisy(x.size());
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t i = 0; i < x.size(); ++i) noisy[i] = x[i] + sampler(gen);
    ++counts.at(static_cast<std::size_t>(f.classify(noisy)));
  }
  return counts;
}

int smoothed_select(const Classifier& f, std::span<const double> x, const SmoothingConfig& cfg,
                    Generator& gen) {
  const auto counts = sample_counts(f, x, cfg.sampler, cfg.n0, gen);
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double clopper_pearson_lower(std::int64_t k, std::int64_t n, double conf_alpha) {
  if (n < 1 || k < 0 || k > n) throw DomainError("clopper_pearson_lower requires 0 <= k <= n, n >= 1");
  if (!(conf_alpha > 0.0 && conf_alpha < 1.0)) throw DomainError("conf_alpha must lie in (0, 1)");
  if (k == 0) return 0.0;
  if (k == n) return std::pow(conf_alpha, 1.0 / static_cast<double>(n));
  const auto a = static_cast<double>(k);
  const auto b = static_cast<double>(n - k + 1);
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (reg_inc_beta(a, b, mid) < conf_alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CertificationResult certify(const Classifier& f, std::span<const double> x, const SmoothingConfig& cfg,
                            Generator& gen) {
  cfg.validate();
  const int top = smoothed_select(f, x, cfg, gen);
  CertificationResult result;
  result.counts = sample_counts(f, x, cfg.sampler, cfg.n, gen);
  const auto k = static_cast<std::int64_t>(result.counts[static_cast<std::size_t>(top)]);
  result.pa_lower = clopper_pearson_lower(k, static_cast<std::int64_t>(cfg.n), cfg.conf_alpha);
  if (result.pa_lower > 0.5) {
    result.predicted = top;
    result.radius = cfg.sigma * normal_quantile(result.pa_lower);
  }
  return result;
}

std::vector<CertificationPair> certify_batch(const Classifier& f,
                                             const std::vector<std::vector<double>>& points,
                                             const CertificationArm& baseline,
                                             const CertificationArm& attacked, unsigned threads) {
  baseline.cfg.validate();
  attacked.cfg.validate();
  std::vector<CertificationPair> out(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const u128 offset = i;
    Generator base_gen(SeedMaterial{baseline.seed.seed, baseline.seed.stream + offset}, baseline.tamper);
    Generator att_gen(SeedMaterial{attacked.seed.seed, attacked.seed.stream + offset}, attacked.tamper);
    out[i].baseline = certify(f, points[i], baseline.cfg, base_gen);
    out[i].attacked = certify(f, points[i], attacked.cfg, att_gen);
  });
  return out;
}

}  // namespace rslab
