#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rslab/generator.hpp"

namespace rslab {

// A sequence of bits stored one per byte (values 0/1).
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::vector<std::uint8_t> bits);

  // Most-significant bit of each word first; truncated to `bit_count`.
  static BitStream from_words(std::span<const std::uint64_t> words, std::size_t bit_count);

  // Draws ceil(bit_count / 64) words from `gen`.
  static BitStream from_generator(Generator& gen, std::size_t bit_count);

  // Accepts '0'/'1' characters; throws ConfigError on anything else.
  static BitStream parse(std::string_view ascii);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t count_ones() const;

  std::string to_ascii() const;

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// File format: ASCII '0'/'1' per bit, no separators, one newline per stream.
void write_bitstream_file(const std::filesystem::path& path, const BitStream& bits);
std::vector<BitStream> read_bitstream_file(const std::filesystem::path& path);

}  // namespace rslab
