#pragma once

#include <utility>
#include <vector>

#include "mcensus/errors.hpp"
#include "mcensus/prime_field.hpp"
#include "mcensus/rational.hpp"

namespace mcensus {

// A field scalar needs +,-,*,/,==, is_zero, and a way to make 0/1 from its
// context (trivial over Q, the modulus over F_p).
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  struct Ctx {
    friend bool operator==(Ctx, Ctx) { return true; }
  };
  static Rat make(Ctx, long v) { return Rat(v); }
};

template <>
struct FieldTraits<Fp> {
  using Ctx = PrimeField;
  static Fp make(const PrimeField& f, long v) {
    long r = v % static_cast<long>(f.p());
    if (r < 0) r += f.p();
    return Fp{static_cast<std::uint32_t>(r), f.p()};
  }
};

// Dense rows x cols matrix over an exact field. Entries stay canonical; a
// FieldMat is an immutable value in spirit (mutation only through at()).
template <class K>
class FieldMat {
public:
  using Ctx = typename FieldTraits<K>::Ctx;

  FieldMat(int rows, int cols, Ctx ctx = Ctx{})
      : rows_(rows), cols_(cols), ctx_(ctx),
        e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
           FieldTraits<K>::make(ctx, 0)) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }

  static FieldMat identity(int n, Ctx ctx = Ctx{}) {
    FieldMat m(n, n, ctx);
    for (int i = 0; i < n; ++i) m.at(i, i) = FieldTraits<K>::make(ctx, 1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n() const {
    if (rows_ != cols_) throw DimensionError("matrix is not square");
    return rows_;
  }
  Ctx ctx() const { return ctx_; }
  K make(long v) const { return FieldTraits<K>::make(ctx_, v); }

  K& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const K& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool is_zero() const {
    for (const K& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  FieldMat transpose() const {
    FieldMat t(cols_, rows_, ctx_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend FieldMat operator*(const FieldMat& a, const FieldMat& b) {
    if (a.cols_ != b.rows_ || !(a.ctx_ == b.ctx_))
      throw DimensionError("field matrix product mismatch");
    FieldMat c(a.rows_, b.cols_, a.ctx_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        K acc = a.make(0);
        for (int k = 0; k < a.cols_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }

  friend FieldMat operator+(const FieldMat& a, const FieldMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.ctx_ == b.ctx_))
      throw DimensionError("field matrix sum mismatch");
    FieldMat c(a.rows_, a.cols_, a.ctx_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
    return c;
  }

  friend bool operator==(const FieldMat& a, const FieldMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ctx_ == b.ctx_ && a.e_ == b.e_;
  }

private:
  int rows_, cols_;
  Ctx ctx_;
  std::vector<K> e_;
};

template <class K>
struct RrefResult {
  FieldMat<K> r;
  std::vector<int> pivots;  // 0-based column indices, strictly increasing
};

// Reduced row echelon form: leading entries 1, pivot columns otherwise zero,
// pivots strictly right-moving. Row space preserved.
template <class K>
RrefResult<K> rref(FieldMat<K> m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    const K inv = m.make(1) / m.at(r, c);
    for (int j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      const K f = m.at(i, c);
      for (int j = c; j < cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class K>
int rank_of(const FieldMat<K>& m) {
  return static_cast<int>(rref(m).pivots.size());
}

// Basis of {v : v^T a = 0}, i.e. the nullspace of a^T. Empty when a is
// nonsingular; n standard basis vectors when a = 0.
template <class K>
std::vector<std::vector<K>> left_null_basis(const FieldMat<K>& a) {
  const auto [r, pivots] = rref(a.transpose());
  const int n = a.rows();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<K>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<K> v(static_cast<std::size_t>(n), a.make(0));
    v[static_cast<std::size_t>(f)] = a.make(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<std::size_t>(pivots[i])] = -r.at(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Intermediates of the left-identity-factor construction. Pivot indices are
// recorded 1-based, matching how they serialize.
template <class K>
struct ConstructionTrace {
  std::vector<std::vector<K>> null_basis;  // v_i, rows of the stacked matrix
  std::vector<std::vector<K>> rref_rows;   // w_i, its reduced rows
  std::vector<int> pivots;                 // z_i, 1-based, strictly increasing
  FieldMat<K> b_prime;
  FieldMat<K> b;
};

template <class K>
struct LeftIdentityFactor {
  FieldMat<K> b;
  ConstructionTrace<K> trace;
};

// Builds B with B*a = a and rank B = rank a: stack a left null basis, reduce
// it, then put row -w_i at index z_i and add the identity. Self-checks the
// contract before returning.
template <class K>
LeftIdentityFactor<K> left_identity_factor(const FieldMat<K>& a) {
  const int n = a.n();
  const auto ctx = a.ctx();

  auto finish = [&](FieldMat<K> b, ConstructionTrace<K> trace) {
    if (!(b * a == a)) throw InternalError("left identity factor: B*A != A");
    return LeftIdentityFactor<K>{std::move(b), std::move(trace)};
  };

  const int k = rank_of(a);
  if (k == n) {
    FieldMat<K> b = FieldMat<K>::identity(n, ctx);
    return finish(b, ConstructionTrace<K>{{}, {}, {}, FieldMat<K>(n, n, ctx), b});
  }
  if (k == 0) {
    FieldMat<K> b(n, n, ctx);
    FieldMat<K> bp(n, n, ctx);
    for (int i = 0; i < n; ++i) bp.at(i, i) = a.make(-1);  // B' = B - I
    return finish(b, ConstructionTrace<K>{{}, {}, {}, std::move(bp), b});
  }

  auto basis = left_null_basis(a);
  if (static_cast<int>(basis.size()) != n - k)
    throw InternalError("left null basis has wrong dimension");

  FieldMat<K> stacked(n - k, n, ctx);
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < n; ++j)
      stacked.at(i, j) = basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  auto [red, pivots0] = rref(std::move(stacked));
  if (static_cast<int>(pivots0.size()) != n - k)
    throw InternalError("stacked null basis lost rank under reduction");

  FieldMat<K> bp(n, n, ctx);
  for (int i = 0; i < n - k; ++i) {
    const int z = pivots0[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) bp.at(z, j) = -red.at(i, j);
  }
  FieldMat<K> b = bp + FieldMat<K>::identity(n, ctx);

  std::vector<std::vector<K>> rref_rows;
  rref_rows.reserve(static_cast<std::size_t>(n - k));
  for (int i = 0; i < n - k; ++i) {
    std::vector<K> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w.push_back(red.at(i, j));
    rref_rows.push_back(std::move(w));
  }
  std::vector<int> pivots1;
  for (int p : pivots0) pivots1.push_back(p + 1);

  if (rank_of(b) != k) throw InternalError("left identity factor: rank B != rank A");
  return finish(b, ConstructionTrace<K>{std::move(basis), std::move(rref_rows),
                                        std::move(pivots1), std::move(bp), b});
}

// C = X Y with rank X <= k1, rank Y <= k2; feasible iff rank C <= min(k1,k2)
// (rank of a product never exceeds the rank of either factor).
template <class K>
std::pair<FieldMat<K>, FieldMat<K>> bounded_rank_decompose(const FieldMat<K>& c, int k1, int k2) {
  const int n = c.n();
  if (k1 < 0 || k2 < 0 || k1 > n || k2 > n)
    throw DomainError("rank caps must lie in [0, n]");
  const int r = rank_of(c);
  if (r > k1 || r > k2)
    throw DomainError("infeasible: rank(C) = " + std::to_string(r) + " exceeds min(k1,k2) = " +
                      std::to_string(k1 < k2 ? k1 : k2));
  return {left_identity_factor(c).b, c};
}

}  // namespace mcensus
