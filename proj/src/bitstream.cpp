#include "rslab/bitstream.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rslab/errors.hpp"

namespace rslab {

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

BitStream BitStream::from_words(std::span<const std::uint64_t> words, std::size_t bit_count) {
  if (bit_count > words.size() * 64) {
    throw ConfigError("not enough words for the requested bit count");
  }
  std::vector<std::uint8_t> bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    bits[i] = static_cast<std::uint8_t>((words[i / 64] >> (63 - i % 64)) & 1U);
  }
  return BitStream(std::move(bits));
}

BitStream BitStream::from_generator(Generator& gen, std::size_t bit_count) {
  std::vector<std::uint64_t> words((bit_count + 63) / 64);
  for (auto& w : words) w = gen.next_u64();
  return from_words(words, bit_count);
}

BitStream BitStream::parse(std::string_view ascii) {
  std::vector<std::uint8_t> bits;
  bits.reserve(ascii.size());
  for (char c : ascii) {
    if (c != '0' && c != '1') {
      throw ConfigError(std::string("invalid bit character '") + c + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitStream(std::move(bits));
}

std::size_t BitStream::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string BitStream::to_ascii() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
  return out;
}

void write_bitstream_file(const std::filesystem::path& path, const BitStream& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << bits.to_ascii() << '\n';
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<BitStream> read_bitstream_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::vector<BitStream> streams;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      streams.push_back(BitStream::parse(line));
    } catch (const ConfigError& e) {
      throw IoError(path.string(), e.what());
    }
  }
  return streams;
}

}  // namespace rslab
