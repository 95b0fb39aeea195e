#pragma once

#include <cstdint>
#include <string>

#include "mcensus/mat.hpp"

namespace mcensus {

// Canonical packed key. Layout (bit-exact, stable across platforms):
//   byte0 = n, byte1 = width, then n^2 entries row-major, each entry as
//   `width` bytes two's-complement little-endian.
struct MatKey {
  std::string bytes;

  friend bool operator==(const MatKey& a, const MatKey& b) { return a.bytes == b.bytes; }
  friend bool operator<(const MatKey& a, const MatKey& b) { return a.bytes < b.bytes; }

  int n() const { return static_cast<unsigned char>(bytes[0]); }
  int width() const { return static_cast<unsigned char>(bytes[1]); }
  std::string hex() const;
};

// Smallest width (1..16) whose signed range covers |entry| <= bound.
int min_width_for_bound(int128 bound);

// Throws KeyWidthError if an entry does not fit the declared width.
MatKey encode_key(const Mat& a, int width);
Mat decode_key(const MatKey& k);

inline std::size_t key_length(int n, int width) {
  return 2 + static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
                 static_cast<std::size_t>(width);
}

// 64-bit mix of the key bytes (FNV-1a folded through a splitmix64 finalizer).
// Deterministic across platforms; its low 8 bits pick the census shard.
std::uint64_t key_mix(const MatKey& k);

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const { return static_cast<std::size_t>(key_mix(k)); }
};

}  // namespace mcensus
