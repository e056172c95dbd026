#pragma once

// Word-level backdoors applied to every 64-bit generator output.
//
// Bit layout of a word as consumed by the Ziggurat sampler:
//   bits 0-7   index bits (layer selector)
//   bit  8     sign bit
//   bits 9-63  distribution bits (position inside the layer)
// Each attack edits exactly one of these fields.

#include <cstdint>
#include <string>
#include <string_view>

namespace rslab {

enum class TamperKind { None, NegKurtosis, Skewness, PosKurtosis };

inline constexpr std::uint64_t kIndexMask = 0xFF;
inline constexpr std::uint64_t kSignBit = 0x100;
inline constexpr std::uint64_t kLowNineMask = 0x1FF;

// Largest beta/gamma the 8-bit counter register can represent.
inline constexpr int kMaxCounterShift = 7;

struct TamperConfig {
  TamperKind kind = TamperKind::None;
  int nk_alpha = 1;  // a = 1 / nk_alpha
  int beta = 0;
  int gamma = 0;
  std::uint8_t counter = 1;

  static TamperConfig none() { return {}; }
  static TamperConfig neg_kurtosis(int nk_alpha);
  static TamperConfig skewness(int beta);
  static TamperConfig pos_kurtosis(int gamma);

  // Builds from the CLI spelling {none,negkurt,skew,poskurt} and the
  // single integer parameter. Throws ConfigError on bad input.
  static TamperConfig from_name(std::string_view name, int param);

  // Attack parameter in CLI terms (alpha, beta or gamma; 0 for none).
  int param() const;

  friend bool operator==(const TamperConfig&, const TamperConfig&) = default;
};

std::string_view tamper_name(TamperKind kind);

// Replaces the distribution bits with a linearly skewed variate obtained by
// inverting F'(x) = a x^2 / 2 + b x, b = 1 - a / 2. Bits 0-8 are kept.
std::uint64_t tamper_neg_kurtosis(std::uint64_t rnd, int nk_alpha);

// Clears the sign bit of every (beta+1)-th word that has it set.
std::uint64_t tamper_skewness(std::uint64_t rnd, TamperConfig& cfg);

// Halves the index bits of every (gamma+1)-th word.
std::uint64_t tamper_pos_kurtosis(std::uint64_t rnd, TamperConfig& cfg);

// Dispatches on cfg.kind; identity for TamperKind::None.
std::uint64_t apply_tamper(std::uint64_t rnd, TamperConfig& cfg);

}  // namespace rslab
