#include "rslab/pcg64.hpp"

#include <cctype>

#include "rslab/errors.hpp"

namespace rslab {

std::string to_hex(u128 value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(34, '0');
  out[1] = 'x';
  for (int i = 33; i >= 2; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[static_cast<unsigned>(value & 0xF)];
    value >>= 4;
  }
  return out;
}

u128 parse_u128(const std::string& text) {
  if (text.empty()) throw ConfigError("empty integer literal");
  unsigned base = 10;
  std::size_t pos = 0;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    pos = 2;
  }
  const u128 limit = ~static_cast<u128>(0);
  u128 value = 0;
  for (; pos < text.size(); ++pos) {
    const auto c = static_cast<unsigned char>(text[pos]);
    unsigned digit = 0;
    if (std::isdigit(c)) {
      digit = c - '0';
    } else if (base == 16 && std::isxdigit(c)) {
      digit = static_cast<unsigned>(std::tolower(c) - 'a' + 10);
    } else {
      throw ConfigError("invalid integer literal '" + text + "'");
    }
    if (value > (limit - digit) / base) {
      throw ConfigError("integer literal '" + text + "' exceeds 128 bits");
    }
    value = value * base + digit;
  }
  return value;
}

}  // namespace rslab
