#pragma once

#include <string>

namespace rslab {

inline constexpr double kDefaultPassThreshold = 0.01;

// One statistical test applied to one stream or sample.
struct TestReport {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 0.0;
  bool passed = false;
  double threshold = kDefaultPassThreshold;

  static TestReport make(std::string name, double statistic, double p_value,
                         double threshold = kDefaultPassThreshold) {
    return {std::move(name), statistic, p_value, p_value >= threshold, threshold};
  }
};

}  // namespace rslab
