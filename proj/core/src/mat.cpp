#include "mcensus/mat.hpp"

#include <ostream>
#include <sstream>
#include <utility>

namespace mcensus {

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.n() != b.n()) throw DimensionError("mat_mul: dimension mismatch");
  const int n = a.n();
  Mat c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int128 acc = 0;
      for (int k = 0; k < n; ++k) acc = checked_add(acc, checked_mul(a.at(i, k), b.at(k, j)));
      c.at(i, j) = acc;
    }
  }
  return c;
}

int128 det(const Mat& a) {
  const int n = a.n();
  Mat m = a;
  int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i) {
        if (m.at(i, k) != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    const int128 pivot = m.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // Bareiss step: exact by the minor identity
        int128 t = checked_sub(checked_mul(m.at(i, j), pivot), checked_mul(m.at(i, k), m.at(k, j)));
        m.at(i, j) = t / prev;
      }
      m.at(i, k) = 0;
    }
    prev = pivot;
  }
  return sign > 0 ? m.at(n - 1, n - 1) : checked_sub(0, m.at(n - 1, n - 1));
}

int rank_rational(const Mat& a) {
  const int n = a.n();
  Mat m = a;
  int128 prev = 1;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i) {
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j) std::swap(m.at(r, j), m.at(piv, j));
    const int128 pivot = m.at(r, c);
    for (int i = r + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) {
        int128 t = checked_sub(checked_mul(m.at(i, j), pivot), checked_mul(m.at(i, c), m.at(r, j)));
        m.at(i, j) = t / prev;
      }
      m.at(i, c) = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

int rank_mod_p(const Mat& a, const PrimeField& f) {
  const int n = a.n();
  std::array<std::uint32_t, Mat::kMaxDim * Mat::kMaxDim> m{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i * n + j)] = f.reduce(a.at(i, j));
  auto e = [&](int i, int j) -> std::uint32_t& { return m[static_cast<std::size_t>(i * n + j)]; };

  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i) {
      if (e(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j) std::swap(e(r, j), e(piv, j));
    const std::uint32_t inv = f.inv(e(r, c));
    for (int i = r + 1; i < n; ++i) {
      if (e(i, c) == 0) continue;
      const std::uint32_t factor = f.mul(e(i, c), inv);
      for (int j = c; j < n; ++j) e(i, j) = f.sub(e(i, j), f.mul(factor, e(r, j)));
    }
    ++r;
  }
  return r;
}

std::string to_string(const Mat& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Mat& a) {
  os << "[";
  for (int i = 0; i < a.n(); ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < a.n(); ++j) os << (j ? "," : "") << to_string(a.at(i, j));
    os << "]";
  }
  return os << "]";
}

}  // namespace mcensus
