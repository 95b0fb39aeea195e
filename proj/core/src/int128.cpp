#include "mcensus/int128.hpp"

#include <ostream>

namespace mcensus {

std::string to_string(uint128 v) {
  if (v == 0) return "0";
  char buf[48];
  int pos = 48;
  while (v > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  return std::string(buf + pos, buf + 48);
}

std::string to_string(int128 v) {
  if (v >= 0) return to_string(static_cast<uint128>(v));
  return "-" + to_string(static_cast<uint128>(0) - static_cast<uint128>(v));
}

int128 parse_int128(std::string_view s) {
  if (s.empty()) throw DomainError("empty integer literal");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    i = 1;
  }
  if (i == s.size()) throw DomainError("sign without digits");
  uint128 mag = 0;
  constexpr uint128 kMax = ~static_cast<uint128>(0);
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9') throw DomainError(std::string("bad digit in integer literal: ") + c);
    if (mag > kMax / 10) throw OverflowError("integer literal out of int128 range");
    mag = mag * 10;
    mag = checked_add_u128(mag, static_cast<uint128>(c - '0'));
  }
  constexpr uint128 kLimitPos = (static_cast<uint128>(1) << 127) - 1;
  if (neg) {
    if (mag > kLimitPos + 1) throw OverflowError("integer literal out of int128 range");
    return -static_cast<int128>(mag - 1) - 1;
  }
  if (mag > kLimitPos) throw OverflowError("integer literal out of int128 range");
  return static_cast<int128>(mag);
}

std::ostream& operator<<(std::ostream& os, int128 v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, uint128 v) { return os << to_string(v); }

}  // namespace mcensus
