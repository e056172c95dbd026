#pragma once

// Seven SP800-22 bitstream tests: Frequency, BlockFrequency, CumulativeSums,
// Runs, LongestRun, ApproximateEntropy and Serial.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "rslab/bitstream.hpp"
#include "rslab/report.hpp"

namespace rslab {

// Disabling the check lets the short worked examples of SP800-22 through.
enum class SizeCheck { Enforce, Skip };

enum class CusumMode { Forward, Backward };

inline constexpr std::size_t kBlockFrequencyM = 128;
inline constexpr int kApproxEntropyM = 2;
inline constexpr int kSerialM = 16;

TestReport nist_frequency(const BitStream& bs, SizeCheck check = SizeCheck::Enforce);
TestReport nist_block_frequency(const BitStream& bs, std::size_t block_len = kBlockFrequencyM,
                                SizeCheck check = SizeCheck::Enforce);
TestReport nist_cumulative_sums(const BitStream& bs, CusumMode mode,
                                SizeCheck check = SizeCheck::Enforce);
TestReport nist_runs(const BitStream& bs, SizeCheck check = SizeCheck::Enforce);
TestReport nist_longest_run(const BitStream& bs, SizeCheck check = SizeCheck::Enforce);
TestReport nist_approx_entropy(const BitStream& bs, int m = kApproxEntropyM,
                               SizeCheck check = SizeCheck::Enforce);
// Returns the ∇ψ² and ∇²ψ² reports, in that order.
std::pair<TestReport, TestReport> nist_serial(const BitStream& bs, int m = kSerialM,
                                              SizeCheck check = SizeCheck::Enforce);

enum class NistTest {
  Frequency,
  BlockFrequency,
  CumulativeSums,
  Runs,
  LongestRun,
  ApproximateEntropy,
  Serial,
};

const std::vector<NistTest>& all_nist_tests();
std::string_view nist_test_name(NistTest test);
NistTest parse_nist_test(std::string_view name);

// Names of the reports a test emits (two for CumulativeSums and Serial).
std::vector<std::string> nist_report_names(NistTest test);

struct NistParams {
  std::size_t block_len = kBlockFrequencyM;
  int approx_entropy_m = kApproxEntropyM;
  int serial_m = kSerialM;
  double threshold = kDefaultPassThreshold;
};

// Whether `n` bits satisfy the SP800-22 minimum for `test`.
bool nist_length_supported(NistTest test, std::size_t n, const NistParams& params = {});

// Runs one test; emits one or two reports.
std::vector<TestReport> run_nist_test(NistTest test, const BitStream& bs,
                                      const NistParams& params = {});

}  // namespace rslab
