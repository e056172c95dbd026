#include "rslab/nist.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "rslab/errors.hpp"
#include "rslab/specfun.hpp"

namespace rslab {

namespace {

constexpr std::size_t kFrequencyFamilyMin = 100;
constexpr std::size_t kLongestRunMin = 128;

void require_length(std::size_t n, std::size_t minimum, SizeCheck check, const char* test) {
  if (check == SizeCheck::Enforce && n < minimum) {
    throw InputSizeError(std::string(test) + " needs at least " + std::to_string(minimum) +
                         " bits, got " + std::to_string(n));
  }
}

int floor_log2(std::size_t n) { return n == 0 ? -1 : static_cast<int>(std::bit_width(n)) - 1; }

// Overlapping m-bit pattern counts with wraparound; m = 0 yields {n}.
std::vector<std::size_t> pattern_counts(const BitStream& bs, int m) {
  const std::size_t n = bs.size();
  std::vector<std::size_t> counts(std::size_t{1} << m, 0);
  if (m == 0) {
    counts[0] = n;
    return counts;
  }
  const std::size_t mask = (std::size_t{1} << m) - 1;
  std::size_t window = 0;
  for (int j = 0; j < m - 1; ++j) window = (window << 1) | bs[static_cast<std::size_t>(j) % n];
  for (std::size_t i = 0; i < n; ++i) {
    window = ((window << 1) | bs[(i + static_cast<std::size_t>(m) - 1) % n]) & mask;
    ++counts[window];
  }
  return counts;
}

double psi_squared(const BitStream& bs, int m) {
  if (m <= 0) return 0.0;
  const auto n = static_cast<double>(bs.size());
  double sum = 0.0;
  for (std::size_t c : pattern_counts(bs, m)) sum += static_cast<double>(c) * static_cast<double>(c);
  return std::ldexp(sum, m) / n - n;
}

double phi_entropy(const BitStream& bs, int m) {
  const auto n = static_cast<double>(bs.size());
  double sum = 0.0;
  for (std::size_t c : pattern_counts(bs, m)) {
    if (c == 0) continue;
    const double pi = static_cast<double>(c) / n;
    sum += pi * std::log(pi);
  }
  return sum;
}

}  // namespace

TestReport nist_frequency(const BitStream& bs, SizeCheck check) {
  require_length(bs.size(), kFrequencyFamilyMin, check, "Frequency");
  const auto n = static_cast<double>(bs.size());
  const double s = 2.0 * static_cast<double>(bs.count_ones()) - n;
  const double s_obs = std::fabs(s) / std::sqrt(n);
  return TestReport::make("Frequency", s_obs, std::erfc(s_obs / std::numbers::sqrt2));
}

TestReport nist_block_frequency(const BitStream& bs, std::size_t block_len, SizeCheck check) {
  if (block_len == 0) throw ConfigError("block length must be positive");
  require_length(bs.size(), std::max(kFrequencyFamilyMin, block_len), check, "BlockFrequency");
  const std::size_t blocks = bs.size() / block_len;
  if (blocks == 0) throw InputSizeError("BlockFrequency needs at least one full block");
  const auto m = static_cast<double>(block_len);
  double chi2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < block_len; ++j) ones += bs[b * block_len + j];
    const double pi = static_cast<double>(ones) / m - 0.5;
    chi2 += pi * pi;
  }
  chi2 *= 4.0 * m;
  return TestReport::make("BlockFrequency", chi2,
                          reg_inc_gamma_upper(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
}

TestReport nist_cumulative_sums(const BitStream& bs, CusumMode mode, SizeCheck check) {
  require_length(bs.size(), kFrequencyFamilyMin, check, "CumulativeSums");
  const std::size_t len = bs.size();
  long long partial = 0;
  long long z = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t idx = mode == CusumMode::Forward ? i : len - 1 - i;
    partial += bs[idx] ? 1 : -1;
    z = std::max(z, partial < 0 ? -partial : partial);
  }
  const auto n = static_cast<long long>(len);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const auto zd = static_cast<double>(z);
  // Integer bounds follow the truncating arithmetic of the reference suite.
  double sum1 = 0.0;
  for (long long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
    sum1 += normal_cdf((4.0 * k + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * k - 1.0) * zd / sqrt_n);
  }
  double sum2 = 0.0;
  for (long long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
    sum2 += normal_cdf((4.0 * k + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
  }
  const double p = std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
  return TestReport::make(
      mode == CusumMode::Forward ? "CumulativeSums[forward]" : "CumulativeSums[backward]", zd, p);
}

TestReport nist_runs(const BitStream& bs, SizeCheck check) {
  require_length(bs.size(), kFrequencyFamilyMin, check, "Runs");
  const auto n = static_cast<double>(bs.size());
  const double pi = static_cast<double>(bs.count_ones()) / n;
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
    return TestReport::make("Runs", 0.0, 0.0);
  }
  std::size_t runs = 1;
  for (std::size_t i = 1; i < bs.size(); ++i) runs += bs[i] != bs[i - 1] ? 1 : 0;
  const auto v = static_cast<double>(runs);
  const double spread = pi * (1.0 - pi);
  const double p = std::erfc(std::fabs(v - 2.0 * n * spread) / (2.0 * std::sqrt(2.0 * n) * spread));
  return TestReport::make("Runs", v, p);
}

TestReport nist_longest_run(const BitStream& bs, SizeCheck check) {
  require_length(bs.size(), kLongestRunMin, check, "LongestRun");
  const std::size_t n = bs.size();
  std::size_t block = 8;
  int lowest = 1;
  std::vector<double> pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
  if (n >= 750000) {
    block = 10000;
    lowest = 10;
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  } else if (n >= 6272) {
    block = 128;
    lowest = 4;
    pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847};
  }
  const int classes = static_cast<int>(pi.size());
  const std::size_t blocks = n / block;
  if (blocks == 0) throw InputSizeError("LongestRun needs at least one full block");
  std::vector<double> counts(pi.size(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    int longest = 0;
    int run = 0;
    for (std::size_t j = 0; j < block; ++j) {
      run = bs[b * block + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const int cls = std::clamp(longest - lowest, 0, classes - 1);
    counts[static_cast<std::size_t>(cls)] += 1.0;
  }
  const auto nb = static_cast<double>(blocks);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double expected = nb * pi[i];
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  const double dof = static_cast<double>(classes - 1);
  return TestReport::make("LongestRun", chi2, reg_inc_gamma_upper(dof / 2.0, chi2 / 2.0));
}

TestReport nist_approx_entropy(const BitStream& bs, int m, SizeCheck check) {
  if (m < 1 || m > 24) throw ConfigError("ApproximateEntropy block length out of range");
  if (check == SizeCheck::Enforce && !(m < floor_log2(bs.size()) - 5)) {
    throw InputSizeError("ApproximateEntropy m=" + std::to_string(m) + " needs m < floor(log2 n) - 5");
  }
  const auto n = static_cast<double>(bs.size());
  const double apen = phi_entropy(bs, m) - phi_entropy(bs, m + 1);
  const double chi2 = 2.0 * n * (std::numbers::ln2 - apen);
  return TestReport::make("ApproximateEntropy", chi2,
                          reg_inc_gamma_upper(std::ldexp(1.0, m - 1), std::max(chi2, 0.0) / 2.0));
}

std::pair<TestReport, TestReport> nist_serial(const BitStream& bs, int m, SizeCheck check) {
  if (m < 2 || m > 24) throw ConfigError("Serial block length out of range");
  if (check == SizeCheck::Enforce && !(m < floor_log2(bs.size()) - 2)) {
    throw InputSizeError("Serial m=" + std::to_string(m) + " needs m < floor(log2 n) - 2");
  }
  const double psi_m = psi_squared(bs, m);
  const double psi_m1 = psi_squared(bs, m - 1);
  const double psi_m2 = psi_squared(bs, m - 2);
  const double del1 = psi_m - psi_m1;
  const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
  const double p1 = reg_inc_gamma_upper(std::ldexp(1.0, m - 2), std::max(del1, 0.0) / 2.0);
  const double p2 = reg_inc_gamma_upper(std::ldexp(1.0, m - 3), std::max(del2, 0.0) / 2.0);
  return {TestReport::make("Serial[1]", del1, p1), TestReport::make("Serial[2]", del2, p2)};
}

const std::vector<NistTest>& all_nist_tests() {
  static const std::vector<NistTest> tests = {
      NistTest::Frequency,  NistTest::BlockFrequency,     NistTest::CumulativeSums, NistTest::Runs,
      NistTest::LongestRun, NistTest::ApproximateEntropy, NistTest::Serial};
  return tests;
}

std::string_view nist_test_name(NistTest test) {
  switch (test) {
    case NistTest::Frequency: return "Frequency";
    case NistTest::BlockFrequency: return "BlockFrequency";
    case NistTest::CumulativeSums: return "CumulativeSums";
    case NistTest::Runs: return "Runs";
    case NistTest::LongestRun: return "LongestRun";
    case NistTest::ApproximateEntropy: return "ApproximateEntropy";
    case NistTest::Serial: return "Serial";
  }
  return "?";
}

NistTest parse_nist_test(std::string_view name) {
  for (NistTest t : all_nist_tests()) {
    if (nist_test_name(t) == name) return t;
  }
  throw ConfigError("unknown NIST test '" + std::string(name) + "'");
}

std::vector<std::string> nist_report_names(NistTest test) {
  switch (test) {
    case NistTest::CumulativeSums:
      return {"CumulativeSums[forward]", "CumulativeSums[backward]"};
    case NistTest::Serial: return {"Serial[1]", "Serial[2]"};
    default: return {std::string(nist_test_name(test))};
  }
}

bool nist_length_supported(NistTest test, std::size_t n, const NistParams& params) {
  switch (test) {
    case NistTest::Frequency:
    case NistTest::CumulativeSums:
    case NistTest::Runs: return n >= kFrequencyFamilyMin;
    case NistTest::BlockFrequency:
      return params.block_len > 0 && n >= std::max(kFrequencyFamilyMin, params.block_len);
    case NistTest::LongestRun: return n >= kLongestRunMin;
    case NistTest::ApproximateEntropy: return params.approx_entropy_m < floor_log2(n) - 5;
    case NistTest::Serial: return params.serial_m < floor_log2(n) - 2;
  }
  return false;
}

std::vector<TestReport> run_nist_test(NistTest test, const BitStream& bs, const NistParams& params) {
  std::vector<TestReport> out;
  switch (test) {
    case NistTest::Frequency: out.push_back(nist_frequency(bs)); break;
    case NistTest::BlockFrequency: out.push_back(nist_block_frequency(bs, params.block_len)); break;
    case NistTest::CumulativeSums:
      out.push_back(nist_cumulative_sums(bs, CusumMode::Forward));
      out.push_back(nist_cumulative_sums(bs, CusumMode::Backward));
      break;
    case NistTest::Runs: out.push_back(nist_runs(bs)); break;
    case NistTest::LongestRun: out.push_back(nist_longest_run(bs)); break;
    case NistTest::ApproximateEntropy:
      out.push_back(nist_approx_entropy(bs, params.approx_entropy_m));
      break;
    case NistTest::Serial: {
      auto [first, second] = nist_serial(bs, params.serial_m);
      out.push_back(std::move(first));
      out.push_back(std::move(second));
      break;
    }
  }
  for (auto& r : out) {
    r.threshold = params.threshold;
    r.passed = r.p_value >= params.threshold;
  }
  return out;
}

}  // namespace rslab
