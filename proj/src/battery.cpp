#include "rslab/battery.hpp"

#include <cmath>

#include "rslab/parallel.hpp"

namespace rslab {

const BatteryRow* BatteryReport::find(std::string_view test_name) const {
  for (const auto& row : rows) {
    if (row.test_name == test_name) return &row;
  }
  return nullptr;
}

std::size_t required_pass_count(std::size_t streams) {
  if (streams == 0) return 0;
  const auto s = static_cast<double>(streams);
  const double floor_rate = 0.99 - 3.0 * std::sqrt(0.99 * 0.01 / s);
  return static_cast<std::size_t>(std::floor(s * floor_rate));
}

BatteryReport run_battery(const StreamSource& source, std::size_t streams, std::size_t bits,
                          const std::vector<NistTest>& tests, const NistParams& params,
                          unsigned threads) {
  BatteryReport report;
  report.streams = streams;
  report.stream_length = bits;
  report.required_passes = required_pass_count(streams);
  if (streams == 0) return report;

  std::vector<NistTest> active;
  for (NistTest t : tests) {
    const bool ok = nist_length_supported(t, bits, params);
    for (auto& name : nist_report_names(t)) report.rows.push_back({name, 0, !ok});
    if (ok) active.push_back(t);
  }

  report.stream_reports.resize(streams);
  parallel_for(streams, threads, [&](std::size_t i) {
    const BitStream bs = source(i);
    auto& out = report.stream_reports[i];
    for (NistTest t : active) {
      for (auto& r : run_nist_test(t, bs, params)) out.push_back(std::move(r));
    }
  });

  for (const auto& per_stream : report.stream_reports) {
    for (const auto& r : per_stream) {
      for (auto& row : report.rows) {
        if (row.test_name == r.test_name && r.passed) ++row.passes;
      }
    }
  }
  return report;
}

BatteryReport run_battery(const GeneratorFactory& factory, std::size_t streams, std::size_t bits,
                          const std::vector<NistTest>& tests, const NistParams& params,
                          unsigned threads) {
  return run_battery(
      StreamSource([&](std::size_t i) {
        Generator gen = factory(i);
        return BitStream::from_generator(gen, bits);
      }),
      streams, bits, tests, params, threads);
}

}  // namespace rslab
