#include "rslab/ziggurat.hpp"

#include <cmath>
#include <numbers>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

using Real = long double;

constexpr int kBisectionSteps = 200;
constexpr double kPositionScale = 4503599627370496.0;  // 2^52
constexpr std::uint64_t kPositionMask = (std::uint64_t{1} << kPositionBits) - 1;

Real gauss(Real x) { return std::exp(-x * x / 2); }

Real tail_mass(Real r) {
  return std::sqrt(std::numbers::pi_v<Real> / 2) * std::erfc(r / std::numbers::sqrt2_v<Real>);
}

struct Stack {
  std::array<Real, kZigguratLayers + 1> x{};
  Real v = 0;
  bool overflowed = false;  // layers reached the mode before region 255
};

// Stacks 255 equal-area layers on a base edge r (unnormalised density).
Stack stack_layers(Real r) {
  Stack s;
  s.v = r * gauss(r) + tail_mass(r);
  s.x[0] = s.v / gauss(r);
  s.x[1] = r;
  for (int i = 1; i < kZigguratLayers - 1; ++i) {
    const Real height = s.v / s.x[i] + gauss(s.x[i]);
    if (height >= 1) {
      s.overflowed = true;
      return s;
    }
    s.x[i + 1] = std::sqrt(-2 * std::log(height));
  }
  s.x[kZigguratLayers] = 0;
  return s;
}

// Positive when the cap region is larger than the others (r too large).
Real cap_excess(const Stack& s) {
  const Real top = s.x[kZigguratLayers - 1];
  return top * (1 - gauss(top)) - s.v;
}

}  // namespace

double ZigguratTables::area_of(int region) const {
  if (region == 0) {
    return base_edge * f_values[0] +
           0.5 * std::erfc(base_edge / std::numbers::sqrt2);
  }
  const auto i = static_cast<std::size_t>(region);
  return x_bounds[i] * (f_values[i] - f_values[i - 1]);
}

ZigguratTables build_ziggurat_tables() {
  Real lo = 3.0L;
  Real hi = 4.0L;
  Stack best;
  bool converged = false;
  for (int step = 0; step < kBisectionSteps; ++step) {
    const Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) {
      converged = true;
      break;
    }
    const Stack s = stack_layers(mid);
    if (s.overflowed || cap_excess(s) < 0) {
      lo = mid;
    } else {
      hi = mid;
      best = s;
    }
  }
  if (!converged || best.v == 0) {
    throw NumericError("ziggurat base edge bisection did not converge");
  }

  const Real norm = 1 / std::sqrt(2 * std::numbers::pi_v<Real>);
  ZigguratTables t;
  t.base_edge = static_cast<double>(best.x[1]);
  t.region_area = static_cast<double>(best.v * norm);
  for (int i = 0; i <= kZigguratLayers; ++i) {
    t.x_bounds[static_cast<std::size_t>(i)] = static_cast<double>(best.x[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < kZigguratLayers; ++i) {
    const auto u = static_cast<std::size_t>(i);
    t.f_values[u] = static_cast<double>(gauss(best.x[u + 1]) * norm);
    const Real ratio = best.x[u + 1] / best.x[u];
    t.k_thresholds[u] = static_cast<std::uint64_t>(std::floor(ratio * kPositionScale));
  }
  return t;
}

const ZigguratTables& ziggurat_tables() {
  static const ZigguratTables tables = build_ziggurat_tables();
  return tables;
}

double ziggurat_candidate(std::uint64_t word, const ZigguratTables& tables) {
  const int region = ZigguratTables::region_for_index(static_cast<unsigned>(word & kIndexMask));
  const std::uint64_t position = (word >> 9) & kPositionMask;
  return static_cast<double>(position) * (1.0 / kPositionScale) *
         tables.x_bounds[static_cast<std::size_t>(region)];
}

double ziggurat_normal(Generator& gen, const ZigguratTables& tables) {
  const double r = tables.base_edge;
  for (int attempt = 0; attempt < kZigguratMaxAttempts; ++attempt) {
    const std::uint64_t word = gen.next_u64();
    const int region = ZigguratTables::region_for_index(static_cast<unsigned>(word & kIndexMask));
    const auto ri = static_cast<std::size_t>(region);
    const bool negative = (word & kSignBit) != 0;
    const std::uint64_t position = (word >> 9) & kPositionMask;
    const double x = static_cast<double>(position) * (1.0 / kPositionScale) * tables.x_bounds[ri];
    if (position < tables.k_thresholds[ri]) return negative ? -x : x;

    if (region == 0) {
      // Marsaglia's tail: exponential proposals beyond r.
      for (; attempt < kZigguratMaxAttempts; ++attempt) {
        const double xx = -std::log1p(-u64_to_unit_double(gen.next_u64())) / r;
        const double yy = -std::log1p(-u64_to_unit_double(gen.next_u64()));
        if (yy + yy > xx * xx) return negative ? -(r + xx) : r + xx;
      }
      break;
    }
    const double f_lo = tables.f_values[ri - 1];
    const double f_hi = tables.f_values[ri];
    const double y = f_lo + u64_to_unit_double(gen.next_u64()) * (f_hi - f_lo);
    if (y < std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi)) return negative ? -x : x;
  }
  throw NumericError("ziggurat sampler exceeded the rejection cap");
}

}  // namespace rslab
