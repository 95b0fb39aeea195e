#include "mcensus/matkey.hpp"

namespace mcensus {

std::string MatKey::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

int min_width_for_bound(int128 bound) {
  if (bound < 0) throw DomainError("negative entry bound");
  for (int w = 1; w <= 16; ++w) {
    // max signed magnitude for w bytes: 2^(8w-1)-1
    if (w == 16) return 16;  // int128 always fits 16 bytes
    int128 limit = (static_cast<int128>(1) << (8 * w - 1)) - 1;
    if (bound <= limit) return w;
  }
  return 16;
}

MatKey encode_key(const Mat& a, int width) {
  if (width < 1 || width > 16) throw DomainError("key width must lie in [1, 16]");
  const int n = a.n();
  MatKey k;
  k.bytes.resize(key_length(n, width));
  k.bytes[0] = static_cast<char>(n);
  k.bytes[1] = static_cast<char>(width);
  std::size_t pos = 2;
  const int128 lo = width == 16 ? static_cast<int128>(0)  // unused, full range
                                : -(static_cast<int128>(1) << (8 * width - 1));
  const int128 hi = width == 16 ? static_cast<int128>(0)
                                : (static_cast<int128>(1) << (8 * width - 1)) - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int128 e = a.at(i, j);
      if (width < 16 && (e < lo || e > hi))
        throw KeyWidthError("entry " + to_string(e) + " does not fit width " +
                            std::to_string(width));
      uint128 u = static_cast<uint128>(e);
      for (int b = 0; b < width; ++b) {
        k.bytes[pos++] = static_cast<char>(static_cast<std::uint8_t>(u >> (8 * b)));
      }
    }
  }
  return k;
}

Mat decode_key(const MatKey& k) {
  if (k.bytes.size() < 2) throw DomainError("key too short");
  const int n = k.n();
  const int width = k.width();
  if (n < 1 || n > Mat::kMaxDim) throw DomainError("key has bad dimension byte");
  if (width < 1 || width > 16) throw DomainError("key has bad width byte");
  if (k.bytes.size() != key_length(n, width)) throw DomainError("key has bad length");
  Mat a(n);
  std::size_t pos = 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      uint128 u = 0;
      for (int b = 0; b < width; ++b) {
        u |= static_cast<uint128>(static_cast<std::uint8_t>(k.bytes[pos++])) << (8 * b);
      }
      // sign-extend from bit 8*width-1
      if (width < 16) {
        const uint128 signbit = static_cast<uint128>(1) << (8 * width - 1);
        if (u & signbit) u |= ~((signbit << 1) - 1);
      }
      a.at(i, j) = static_cast<int128>(u);
    }
  }
  return a;
}

std::uint64_t key_mix(const MatKey& k) {
  std::uint64_t h = 14695981039346656037ull;  // FNV offset basis
  for (unsigned char c : k.bytes) {
    h ^= c;
    h *= 1099511628211ull;  // FNV prime
  }
  // splitmix64 finalizer
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

}  // namespace mcensus
