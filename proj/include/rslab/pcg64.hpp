#pragma once

// PCG64 (XSL-RR 128/64): a 128-bit linear congruential state with a 64-bit
// xorshift-low / random-rotate output permutation.

#include <cstdint>
#include <string>

namespace rslab {

using u128 = unsigned __int128;

constexpr u128 make_u128(std::uint64_t hi, std::uint64_t lo) {
  return (static_cast<u128>(hi) << 64) | lo;
}

// Default 128-bit LCG multiplier of the PCG reference implementation.
inline constexpr u128 kPcgDefaultMultiplier =
    make_u128(2549297995355413924ULL, 4865540595714422341ULL);

struct Pcg64State {
  u128 state = 0;
  u128 increment = 1;  // must be odd
  u128 multiplier = kPcgDefaultMultiplier;

  friend bool operator==(const Pcg64State&, const Pcg64State&) = default;
};

struct SeedMaterial {
  u128 seed = 0;
  u128 stream = 0;

  friend bool operator==(const SeedMaterial&, const SeedMaterial&) = default;
};

// X_{n+1} = (a X_n + c) mod 2^128; the modulus is the natural wraparound.
constexpr Pcg64State lcg_advance(Pcg64State s) {
  s.state = s.multiplier * s.state + s.increment;
  return s;
}

constexpr std::uint64_t rotr64(std::uint64_t v, unsigned r) {
  return (v >> (r & 63U)) | (v << ((64U - r) & 63U));
}

constexpr std::uint64_t pcg64_output(u128 state) {
  const auto folded = static_cast<std::uint64_t>(state ^ (state >> 64));
  const auto rot = static_cast<unsigned>(state >> 122);
  return rotr64(folded, rot);
}

// Reference two-step initialisation: inc = 2*stream+1, advance, add seed,
// advance. Streams s and s + 2^127 share an increment.
constexpr Pcg64State seed_state(const SeedMaterial& material) {
  Pcg64State s;
  s.increment = (material.stream << 1) | 1U;
  s.state = 0;
  s = lcg_advance(s);
  s.state += material.seed;
  return lcg_advance(s);
}

// Hex rendering for manifests and diagnostics ("0x" + 32 hex digits).
std::string to_hex(u128 value);

// Parses decimal or 0x-prefixed hex up to 128 bits. Throws ConfigError.
u128 parse_u128(const std::string& text);

}  // namespace rslab
