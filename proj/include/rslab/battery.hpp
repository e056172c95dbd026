#pragma once

// Applies the SP800-22 subset to many independently seeded streams and
// tallies pass counts.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rslab/bitstream.hpp"
#include "rslab/generator.hpp"
#include "rslab/nist.hpp"

namespace rslab {

// Builds the generator for stream `index`; must be callable concurrently.
using GeneratorFactory = std::function<Generator(std::size_t index)>;
// Produces stream `index`; must be callable concurrently.
using StreamSource = std::function<BitStream(std::size_t index)>;

struct BatteryRow {
  std::string test_name;
  std::size_t passes = 0;
  bool skipped = false;  // stream too short for the test
};

struct BatteryReport {
  std::size_t streams = 0;
  std::size_t stream_length = 0;
  std::size_t required_passes = 0;
  std::vector<BatteryRow> rows;
  // stream_reports[i] holds every report for stream i, in row order.
  std::vector<std::vector<TestReport>> stream_reports;

  const BatteryRow* find(std::string_view test_name) const;
};

// Minimum pass count for `streams` streams at a 0.01 threshold: the
// SP800-22 proportion rule p̂ - 3√(p̂(1-p̂)/S) with p̂ = 0.99, floored
// (980 for 1000 streams, 96 for 100).
std::size_t required_pass_count(std::size_t streams);

// `threads` <= 1 runs serially; results do not depend on it.
BatteryReport run_battery(const StreamSource& source, std::size_t streams, std::size_t bits,
                          const std::vector<NistTest>& tests, const NistParams& params = {},
                          unsigned threads = 1);

BatteryReport run_battery(const GeneratorFactory& factory, std::size_t streams, std::size_t bits,
                          const std::vector<NistTest>& tests, const NistParams& params = {},
                          unsigned threads = 1);

}  // namespace rslab
