#include "rslab/normality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "rslab/errors.hpp"
#include "rslab/generator.hpp"
#include "rslab/specfun.hpp"
#include "rslab/ziggurat.hpp"

namespace rslab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_copy(std::span<const double> samples) {
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  return x;
}

void require_count(std::size_t n, std::size_t minimum, const char* test) {
  if (n < minimum) {
    throw InputSizeError(std::string(test) + " needs at least " + std::to_string(minimum) +
                         " samples, got " + std::to_string(n));
  }
}

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

TestReport shapiro_core(std::span<const double> samples) {
  const std::size_t n = samples.size();
  require_count(n, 3, "ShapiroWilk");
  const std::vector<double> x = sorted_copy(samples);
  if (x.back() - x.front() <= 1e-19 * std::max(1.0, std::fabs(x.front()))) {
    throw DegenerateInputError("ShapiroWilk: all samples are equal");
  }
  const auto an = static_cast<double>(n);
  const std::size_t half = n / 2;

  static constexpr std::array<double, 6> c1 = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr std::array<double, 6> c2 = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr std::array<double, 4> c3 = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr std::array<double, 4> c4 = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr std::array<double, 4> c5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr std::array<double, 3> c6 = {-0.4803, -0.082676, 0.0030302};

  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
  } else {
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;
    std::size_t first = 1;
    double fac = 0.0;
    if (n > 5) {
      const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
      first = 2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first; i < half; ++i) a[i] = -m[i] / fac;
  }

  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / an;
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);
  double num = 0.0;
  for (std::size_t i = 0; i < half; ++i) num += a[i] * (x[n - 1 - i] - x[i]);
  const double w = std::min(1.0, num * num / ssq);

  double p = 0.0;
  if (n == 3) {
    p = std::max(0.0, 6.0 / kPi * (std::asin(std::sqrt(w)) - kPi / 3.0));
  } else {
    double y = std::log1p(-w);
    double mu = 0.0;
    double sigma = 0.0;
    if (n <= 11) {
      const double gamma = -2.273 + 0.459 * an;
      if (y >= gamma) return TestReport::make("ShapiroWilk", w, 1e-99);
      y = -std::log(gamma - y);
      mu = poly(c3, an);
      sigma = std::exp(poly(c4, an));
    } else {
      const double ln = std::log(an);
      mu = poly(c5, ln);
      sigma = std::exp(poly(c6, ln));
    }
    p = normal_sf((y - mu) / sigma);
  }
  return TestReport::make("ShapiroWilk", w, std::clamp(p, 0.0, 1.0));
}

// Q(λ) = P(K > λ) for the Kolmogorov distribution.
double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    const double c = -kPi * kPi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double t = std::exp(c * (2.0 * k - 1.0) * (2.0 * k - 1.0));
      sum += t;
      if (t < 1e-17 * sum) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * kPi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double t = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * t;
    if (t < 1e-17) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_distance(const std::vector<double>& sorted_cdf) {
  const auto n = static_cast<double>(sorted_cdf.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_cdf.size(); ++i) {
    const double f = sorted_cdf[i];
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double lilliefors_distance(std::span<const double> samples) {
  const std::size_t n = samples.size();
  std::vector<double> x = sorted_copy(samples);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);
  if (!(ssq > 0.0)) throw DegenerateInputError("Lilliefors: zero variance");
  const double sd = std::sqrt(ssq / static_cast<double>(n - 1));
  for (double& v : x) v = normal_cdf((v - mean) / sd);
  return ks_distance(x);
}

double large_n_scale(std::size_t n) {
  const double r = std::sqrt(static_cast<double>(n));
  return r - 0.01 + 0.85 / r;
}

// Limiting CDF of nω² (Anderson-Darling 1952 series).
double cvm_limit_cdf(double t) {
  if (t <= 0.0) return 0.0;
  double total = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0)) /
                     (std::pow(kPi, 1.5) * std::sqrt(t));
    const double y = 4.0 * k + 1.0;
    const double q = y * y / (16.0 * t);
    const double term = q > 700.0 ? 0.0 : u * std::sqrt(y) * std::exp(-q) * std::cyl_bessel_k(0.25, q);
    total += term;
    if (std::fabs(term) < 1e-12) break;
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace

Moments sample_moments(std::span<const double> samples) {
  const std::size_t n = samples.size();
  require_count(n, 4, "sample_moments");
  const auto an = static_cast<double>(n);
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / an;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= an;
  m3 /= an;
  m4 /= an;
  if (!(m2 > 0.0)) throw DegenerateInputError("sample has zero variance");
  return {mean, m2, m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

TestReport shapiro_wilk(std::span<const double> samples) {
  if (samples.size() > kShapiroMaxSamples) {
    throw InputSizeError("ShapiroWilk accepts at most 5000 samples, got " +
                         std::to_string(samples.size()));
  }
  return shapiro_core(samples);
}

TestReport shapiro_wilk_unbounded(std::span<const double> samples) { return shapiro_core(samples); }

TestReport dagostino_k2(std::span<const double> samples) {
  require_count(samples.size(), 20, "DAgostinoK2");
  const Moments mo = sample_moments(samples);
  const auto n = static_cast<double>(samples.size());

  double y = mo.skewness * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  if (y == 0.0) y = 1.0;
  const double zs = delta * std::asinh(y / alpha);

  const double b2 = mo.excess_kurtosis + 3.0;
  const double e = 3.0 * (n - 1.0) / (n + 1.0);
  const double varb2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double xk = (b2 - e) / std::sqrt(varb2);
  const double sqrtbeta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                           std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
  const double a = 6.0 + 8.0 / sqrtbeta1 * (2.0 / sqrtbeta1 + std::sqrt(1.0 + 4.0 / (sqrtbeta1 * sqrtbeta1)));
  const double term1 = 1.0 - 2.0 / (9.0 * a);
  const double denom = 1.0 + xk * std::sqrt(2.0 / (a - 4.0));
  if (denom == 0.0) throw NumericError("DAgostinoK2: kurtosis transform is singular");
  const double term2 = std::copysign(std::cbrt((1.0 - 2.0 / a) / std::fabs(denom)), denom);
  const double zk = (term1 - term2) / std::sqrt(2.0 / (9.0 * a));

  const double k2 = zs * zs + zk * zk;
  return TestReport::make("DAgostinoK2", k2, std::exp(-k2 / 2.0));
}

TestReport kolmogorov_smirnov_normal(std::span<const double> samples) {
  require_count(samples.size(), 8, "KolmogorovSmirnov");
  std::vector<double> f = sorted_copy(samples);
  if (f.front() == f.back()) throw DegenerateInputError("KolmogorovSmirnov: zero variance");
  for (double& v : f) v = normal_cdf(v);
  const double d = ks_distance(f);
  const double rn = std::sqrt(static_cast<double>(f.size()));
  return TestReport::make("KolmogorovSmirnov", d, kolmogorov_sf(d * (rn + 0.12 + 0.11 / rn)));
}

TestReport cramer_von_mises_normal(std::span<const double> samples) {
  require_count(samples.size(), 8, "CramerVonMises");
  const std::vector<double> x = sorted_copy(samples);
  if (x.front() == x.back()) throw DegenerateInputError("CramerVonMises: zero variance");
  const auto n = static_cast<double>(x.size());
  double t = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = normal_cdf(x[i]) - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n);
    t += d * d;
  }
  return TestReport::make("CramerVonMises", t, 1.0 - cvm_limit_cdf(t));
}

TestReport jarque_bera(std::span<const double> samples) {
  require_count(samples.size(), 8, "JarqueBera");
  const Moments mo = sample_moments(samples);
  const auto n = static_cast<double>(samples.size());
  const double jb = n / 6.0 * (mo.skewness * mo.skewness + mo.excess_kurtosis * mo.excess_kurtosis / 4.0);
  return TestReport::make("JarqueBera", jb, std::exp(-jb / 2.0));
}

const std::vector<double>& lilliefors_null_table(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<double>> cache;
  const std::size_t size = std::min(n, kLillieforsMaxTableSize);
  require_count(size, 8, "Lilliefors");
  std::lock_guard lock(mutex);
  auto it = cache.find(size);
  if (it != cache.end()) return it->second;

  Generator gen(SeedMaterial{0x4c494c4cu, size});
  std::vector<double> table(kLillieforsSimulations);
  std::vector<double> draw(size);
  for (double& d : table) {
    for (double& v : draw) v = ziggurat_normal(gen);
    d = lilliefors_distance(draw);
  }
  std::sort(table.begin(), table.end());
  return cache.emplace(size, std::move(table)).first->second;
}

TestReport lilliefors(std::span<const double> samples) {
  const std::size_t n = samples.size();
  require_count(n, 8, "Lilliefors");
  const double d = lilliefors_distance(samples);
  const std::vector<double>& table = lilliefors_null_table(n);
  double probe = d;
  if (n > kLillieforsMaxTableSize) probe = d * large_n_scale(n) / large_n_scale(kLillieforsMaxTableSize);
  const auto above = static_cast<double>(table.end() - std::lower_bound(table.begin(), table.end(), probe));
  return TestReport::make("Lilliefors", d, (above + 1.0) / (static_cast<double>(table.size()) + 1.0));
}

std::vector<std::pair<double, double>> qq_data(std::span<const double> samples,
                                               std::size_t quantile_count) {
  if (quantile_count == 0) return {};
  if (quantile_count > samples.size()) {
    throw InputSizeError("qq_data: more quantiles than samples");
  }
  const std::vector<double> x = sorted_copy(samples);
  const auto n = static_cast<double>(x.size());
  const auto q = static_cast<double>(quantile_count);
  std::vector<std::pair<double, double>> out;
  out.reserve(quantile_count);
  for (std::size_t i = 0; i < quantile_count; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / q;
    const double h = std::clamp(n * p + 0.5, 1.0, n);
    const auto lo = static_cast<std::size_t>(std::floor(h)) - 1;
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    const double frac = h - std::floor(h);
    out.emplace_back(normal_quantile(p), x[lo] + frac * (x[hi] - x[lo]));
  }
  return out;
}

const std::vector<NormalityTest>& all_normality_tests() {
  static const std::vector<NormalityTest> tests = {
      NormalityTest::ShapiroWilk,    NormalityTest::DAgostinoK2, NormalityTest::KolmogorovSmirnov,
      NormalityTest::CramerVonMises, NormalityTest::JarqueBera,  NormalityTest::Lilliefors};
  return tests;
}

std::string_view normality_test_name(NormalityTest test) {
  switch (test) {
    case NormalityTest::ShapiroWilk: return "ShapiroWilk";
    case NormalityTest::DAgostinoK2: return "DAgostinoK2";
    case NormalityTest::KolmogorovSmirnov: return "KolmogorovSmirnov";
    case NormalityTest::CramerVonMises: return "CramerVonMises";
    case NormalityTest::JarqueBera: return "JarqueBera";
    case NormalityTest::Lilliefors: return "Lilliefors";
  }
  return "?";
}

NormalityTest parse_normality_test(std::string_view name) {
  for (NormalityTest t : all_normality_tests()) {
    if (normality_test_name(t) == name) return t;
  }
  throw ConfigError("unknown normality test '" + std::string(name) + "'");
}

bool normality_size_supported(NormalityTest test, std::size_t n, const NormalityParams& params) {
  switch (test) {
    case NormalityTest::ShapiroWilk:
      return n >= 3 && (params.unbounded_shapiro || n <= kShapiroMaxSamples);
    case NormalityTest::DAgostinoK2: return n >= 20;
    default: return n >= 8;
  }
}

TestReport run_normality_test(NormalityTest test, std::span<const double> samples,
                              const NormalityParams& params) {
  TestReport r;
  switch (test) {
    case NormalityTest::ShapiroWilk:
      r = params.unbounded_shapiro ? shapiro_wilk_unbounded(samples) : shapiro_wilk(samples);
      break;
    case NormalityTest::DAgostinoK2: r = dagostino_k2(samples); break;
    case NormalityTest::KolmogorovSmirnov: r = kolmogorov_smirnov_normal(samples); break;
    case NormalityTest::CramerVonMises: r = cramer_von_mises_normal(samples); break;
    case NormalityTest::JarqueBera: r = jarque_bera(samples); break;
    case NormalityTest::Lilliefors: r = lilliefors(samples); break;
  }
  r.threshold = params.threshold;
  r.passed = r.p_value >= params.threshold;
  return r;
}

}  // namespace rslab
