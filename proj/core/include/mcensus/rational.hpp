#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "mcensus/errors.hpp"
#include "mcensus/int128.hpp"

namespace mcensus {

mpz_class mpz_from_int128(int128 v);

// Exact rational, always canonical: lowest terms, positive denominator.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long v) : v_(v) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rat from_int128(int128 v) { return Rat(mpz_from_int128(v), mpz_class(1)); }

  // "a/b" or "a"
  static Rat parse(std::string_view s);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  double to_double() const { return v_.get_d(); }

  std::string str() const;  // "a/b", or "a" when the denominator is 1

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw DomainError("division by zero rational");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }

private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace mcensus
