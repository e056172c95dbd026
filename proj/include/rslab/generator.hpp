#pragma once

#include <cstdint>
#include <limits>

#include "rslab/pcg64.hpp"
#include "rslab/tamper.hpp"

namespace rslab {

// PCG64 with a tamper stage on every emitted word. Single-owner mutable
// state: move it between threads, never share it.
//
// Satisfies std::uniform_random_bit_generator.
class Generator {
 public:
  using result_type = std::uint64_t;

  explicit Generator(const SeedMaterial& material, TamperConfig tamper = {})
      : state_(seed_state(material)), tamper_(tamper) {}

  Generator(const Pcg64State& state, TamperConfig tamper)
      : state_(state), tamper_(tamper) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Advance once, permute, tamper.
  result_type next_u64() { return apply_tamper(next_raw(), tamper_); }

  result_type operator()() { return next_u64(); }

  // Untampered word; still advances the state.
  result_type next_raw() {
    state_ = lcg_advance(state_);
    return pcg64_output(state_.state);
  }

  const Pcg64State& state() const noexcept { return state_; }
  const TamperConfig& tamper() const noexcept { return tamper_; }

 private:
  Pcg64State state_;
  TamperConfig tamper_;
};

}  // namespace rslab
