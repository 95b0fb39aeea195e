#include "mcensus/prime_field.hpp"

#include <ostream>

namespace mcensus {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) {
  constexpr std::uint64_t kMax = (1ull << 31) - 1;
  if (p < 2 || p > kMax) throw DomainError("prime modulus must lie in [2, 2^31-1]");
  if (!is_prime_u64(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("division by zero in F_p");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<std::uint32_t>(t);
}

namespace {
inline void require_same_field(const Fp& a, const Fp& b) {
  if (a.p != b.p) throw DomainError("mixed F_p moduli in arithmetic");
}
}  // namespace

Fp operator+(const Fp& a, const Fp& b) {
  require_same_field(a, b);
  std::uint64_t s = static_cast<std::uint64_t>(a.v) + b.v;
  return Fp{static_cast<std::uint32_t>(s >= a.p ? s - a.p : s), a.p};
}

Fp operator-(const Fp& a, const Fp& b) {
  require_same_field(a, b);
  return Fp{a.v >= b.v ? a.v - b.v : static_cast<std::uint32_t>(a.v + a.p - b.v), a.p};
}

Fp operator*(const Fp& a, const Fp& b) {
  require_same_field(a, b);
  return Fp{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % a.p), a.p};
}

Fp operator/(const Fp& a, const Fp& b) {
  require_same_field(a, b);
  return a * Fp{PrimeField(b.p).inv(b.v), b.p};
}

Fp Fp::operator-() const { return Fp{v == 0 ? 0 : p - v, p}; }

std::ostream& operator<<(std::ostream& os, const Fp& x) {
  return os << x.v << " (mod " << x.p << ")";
}

}  // namespace mcensus
