#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mcensus/errors.hpp"

namespace mcensus {

using int128 = __int128;
using uint128 = unsigned __int128;

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int128 add overflow");
  return r;
}

inline int128 checked_sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int128 sub overflow");
  return r;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int128 mul overflow");
  return r;
}

inline std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("u64 add overflow");
  return r;
}

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("u64 mul overflow");
  return r;
}

inline uint128 checked_add_u128(uint128 a, uint128 b) {
  uint128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("u128 add overflow");
  return r;
}

inline uint128 checked_mul_u128(uint128 a, uint128 b) {
  uint128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("u128 mul overflow");
  return r;
}

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

std::string to_string(int128 v);
std::string to_string(uint128 v);

// Accepts an optional sign followed by decimal digits. Throws DomainError on
// malformed input, OverflowError past the int128 range.
int128 parse_int128(std::string_view s);

std::ostream& operator<<(std::ostream& os, int128 v);
std::ostream& operator<<(std::ostream& os, uint128 v);

}  // namespace mcensus
