#include "mcensus/rational.hpp"

#include <ostream>

namespace mcensus {

mpz_class mpz_from_int128(int128 v) {
  const bool neg = v < 0;
  uint128 mag = neg ? static_cast<uint128>(0) - static_cast<uint128>(v) : static_cast<uint128>(v);
  mpz_class hi(static_cast<unsigned long>(mag >> 64));
  mpz_class out = (hi << 64) + mpz_class(static_cast<unsigned long>(mag));
  return neg ? mpz_class(-out) : out;
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view s) {
  if (s.empty()) throw DomainError("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rat(mpz_class(std::string(s)), mpz_class(1));
    }
    mpz_class num{std::string(s.substr(0, slash))};
    mpz_class den{std::string(s.substr(slash + 1))};
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational literal: " + std::string(s));
  }
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace mcensus
