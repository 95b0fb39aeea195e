#pragma once

#include <cstdint>
#include <iosfwd>

#include "mcensus/errors.hpp"
#include "mcensus/int128.hpp"

namespace mcensus {

// Prime modulus in [2, 2^31-1], validated by deterministic trial division.
// Elements are canonical residues in [0, p).
class PrimeField {
public:
  explicit PrimeField(std::uint64_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t reduce(int128 x) const {
    int128 r = x % static_cast<int128>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;  // throws DomainError on 0

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
  std::uint32_t p_;
};

// Single residue tagged with its modulus; arithmetic requires equal moduli.
struct Fp {
  std::uint32_t v = 0;
  std::uint32_t p = 2;

  Fp() = default;
  Fp(std::uint32_t value, const PrimeField& f) : v(value % f.p()), p(f.p()) {}
  // raw: value must already be canonical in [0, modulus)
  Fp(std::uint32_t value, std::uint32_t modulus) : v(value), p(modulus) {}

  PrimeField field() const { return PrimeField(p); }
  bool is_zero() const { return v == 0; }

  friend bool operator==(const Fp& a, const Fp& b) { return a.p == b.p && a.v == b.v; }
  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  friend Fp operator/(const Fp& a, const Fp& b);
  Fp operator-() const;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

}  // namespace mcensus
