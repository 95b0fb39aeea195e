#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>

#include "mcensus/errors.hpp"
#include "mcensus/int128.hpp"
#include "mcensus/prime_field.hpp"

namespace mcensus {

// Dense n x n integer matrix, n in [1, 6], entries exact int128 with checked
// arithmetic everywhere. Storage is inline; a Mat is a plain value.
class Mat {
public:
  static constexpr int kMaxDim = 6;

  explicit Mat(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw DimensionError("matrix dimension must lie in [1, 6]");
    e_.fill(0);
  }

  Mat(int n, std::initializer_list<int128> row_major) : Mat(n) {
    if (static_cast<int>(row_major.size()) != n * n)
      throw DimensionError("entry count does not match n^2");
    int i = 0;
    for (int128 v : row_major) e_[static_cast<std::size_t>(i++)] = v;
  }

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int n() const { return n_; }

  int128& at(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const int128& at(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }

  bool is_zero() const {
    for (int i = 0; i < n_ * n_; ++i)
      if (e_[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  int128 max_abs_entry() const {
    int128 m = 0;
    for (int i = 0; i < n_ * n_; ++i) {
      int128 a = abs128(e_[static_cast<std::size_t>(i)]);
      if (a > m) m = a;
    }
    return m;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_ * a.n_; ++i)
      if (a.e_[static_cast<std::size_t>(i)] != b.e_[static_cast<std::size_t>(i)]) return false;
    return true;
  }

private:
  int n_;
  std::array<int128, kMaxDim * kMaxDim> e_;
};

// Exact product; throws DimensionError on mismatched n, OverflowError if an
// entry leaves the int128 range.
Mat mat_mul(const Mat& a, const Mat& b);

// Fraction-free (Bareiss) determinant. Exact; division steps never truncate.
int128 det(const Mat& a);

// Rank over Q via fraction-free elimination with row pivoting; 0 iff zero matrix.
int rank_rational(const Mat& a);

// Rank of the matrix reduced entrywise mod p.
int rank_mod_p(const Mat& a, const PrimeField& f);

std::string to_string(const Mat& a);
std::ostream& operator<<(std::ostream& os, const Mat& a);

}  // namespace mcensus
