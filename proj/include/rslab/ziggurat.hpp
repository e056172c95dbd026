#pragma once

// 256-region Ziggurat for the standard normal.
//
// Storage order runs bottom-up: region 0 is the base strip (rectangle of
// width r plus the tail beyond r), region 255 the narrow cap touching the
// mode. x_bounds[i] is the right edge of region i (x_bounds[0] is the base
// strip's pseudo-width v / f(r)), x_bounds[256] = 0. Region i >= 1 spans
// heights [f(x_bounds[i]), f(x_bounds[i+1])], so f_values[i] is the pdf at
// x_bounds[i+1].
//
// A 64-bit word is consumed as
//   bits 0-7   index: 0 selects the base strip, j >= 1 selects region 256-j
//              (index 1 is the cap, index 255 the widest rectangle)
//   bit  8     sign (set = negative)
//   bits 9-60  52-bit position inside the region (bits 61-63 unused)
// which is the cyclic layout of the Marsaglia-Tsang reference code and the
// exact word layout of numpy's standard_normal. The attacks treat bits 9-63
// as the distribution field; the sampler reads the low 52 bits of it.

#include <array>
#include <cstdint>

#include "rslab/generator.hpp"

namespace rslab {

inline constexpr int kZigguratLayers = 256;
inline constexpr int kPositionBits = 52;
inline constexpr int kZigguratMaxAttempts = 10000;

struct ZigguratTables {
  std::array<double, kZigguratLayers + 1> x_bounds{};
  std::array<double, kZigguratLayers> f_values{};
  std::array<std::uint64_t, kZigguratLayers> k_thresholds{};
  double base_edge = 0.0;    // r
  double region_area = 0.0;  // common area v of every region

  // Area of region i recomputed from the stored tables.
  double area_of(int region) const;

  static constexpr int region_for_index(unsigned index_bits) {
    return index_bits == 0 ? 0 : kZigguratLayers - static_cast<int>(index_bits);
  }
};

// Bisection on r in extended precision. Throws NumericError if 200 steps
// do not close the top region.
ZigguratTables build_ziggurat_tables();

// Process-wide immutable tables.
const ZigguratTables& ziggurat_tables();

// (w >> 11) / 2^53.
constexpr double u64_to_unit_double(std::uint64_t w) {
  return static_cast<double>(w >> 11) * (1.0 / 9007199254740992.0);
}

// Standard normal variate. Throws NumericError after kZigguratMaxAttempts
// rejected words, which only a pathological tamper can cause.
double ziggurat_normal(Generator& gen, const ZigguratTables& tables = ziggurat_tables());

// Candidate |x| the sampler derives from a word before any rejection test.
double ziggurat_candidate(std::uint64_t word, const ZigguratTables& tables = ziggurat_tables());

}  // namespace rslab
