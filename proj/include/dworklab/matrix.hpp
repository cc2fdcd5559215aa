#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "dworklab/laurent.hpp"
#include "dworklab/padic.hpp"

namespace dworklab {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<ExtElem>;
using PolyMatrix = Matrix<LaurentPoly>;

/// Ring operations on ExtElem for the generic matrix routines.
struct ScalarOps {
  PadicCtx ctx;
  ExtElem zero() const { return ctx.zero(); }
  ExtElem one() const { return ctx.one(); }
  ExtElem add(const ExtElem& a, const ExtElem& b) const { return ctx.add(a, b); }
  ExtElem sub(const ExtElem& a, const ExtElem& b) const { return ctx.sub(a, b); }
  ExtElem mul(const ExtElem& a, const ExtElem& b) const { return ctx.mul(a, b); }
  ExtElem neg(const ExtElem& a) const { return ctx.neg(a); }
};

/// Ring operations on z-polynomials (r = 0, n variables).
struct PolyOps {
  PadicCtx ctx;
  int n;
  LaurentPoly zero() const { return LaurentPoly(ctx, 0, n); }
  LaurentPoly one() const { return LaurentPoly::constant(ctx, 0, n, ctx.one()); }
  LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) const { return a + b; }
  LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b) const { return a - b; }
  LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) const { return poly_mul(a, b); }
  LaurentPoly neg(const LaurentPoly& a) const { return -a; }
};

template <class Ops>
auto identity_matrix(const Ops& ops, std::size_t g) {
  Matrix m(g, g, ops.zero());
  for (std::size_t i = 0; i < g; ++i) m(i, i) = ops.one();
  return m;
}

template <class Ops, class T>
Matrix<T> mat_mul(const Ops& ops, const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "matrix shapes do not match");
  Matrix<T> c(a.rows(), b.cols(), ops.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = ops.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc = ops.add(acc, ops.mul(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  return c;
}

template <class Ops, class T>
Matrix<T> mat_add(const Ops& ops, const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ops.add(a(i, j), b(i, j));
  return c;
}

template <class Ops, class T>
Matrix<T> mat_sub(const Ops& ops, const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ops.sub(a(i, j), b(i, j));
  return c;
}

template <class Ops, class T>
Matrix<T> mat_scale(const Ops& ops, const Matrix<T>& a, const T& k) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ops.mul(a(i, j), k);
  return c;
}

/// Determinant by Laplace expansion over column subsets: division-free, so
/// exact over Z/p^N and over polynomial rings.
template <class Ops, class T>
T determinant(const Ops& ops, const Matrix<T>& a) {
  const std::size_t g = a.rows();
  if (g != a.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  if (g == 0) return ops.one();
  if (g > 20) fail(ErrorCode::TooLarge, "determinant size");
  std::vector<T> dp(std::size_t{1} << g, ops.zero());
  std::vector<bool> live(dp.size(), false);
  dp[0] = ops.one();
  live[0] = true;
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (!live[mask]) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t col = 0; col < g; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      // Sign flips once per already used column to the right of this one.
      const int above = std::popcount(mask >> (col + 1));
      T term = ops.mul(dp[mask], a(row, col));
      const std::size_t next = mask | (std::size_t{1} << col);
      dp[next] = (above % 2 == 0) ? ops.add(dp[next], term) : ops.sub(dp[next], term);
      live[next] = true;
    }
  }
  return dp.back();
}

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& a, std::size_t skip_row, std::size_t skip_col) {
  Matrix<T> m(a.rows() - 1, a.cols() - 1, a(0, 0));
  for (std::size_t i = 0, ii = 0; i < a.rows(); ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, jj = 0; j < a.cols(); ++j) {
      if (j == skip_col) continue;
      m(ii, jj++) = a(i, j);
    }
    ++ii;
  }
  return m;
}

/// Rows and columns chosen from a matrix.
template <class T>
Matrix<T> submatrix(const Matrix<T>& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  Matrix<T> m(rows.size(), cols.size(), a(0, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i], cols[j]);
  return m;
}

/// adj(A), with A * adj(A) = det(A) * I.
template <class Ops, class T>
Matrix<T> adjugate(const Ops& ops, const Matrix<T>& a) {
  const std::size_t g = a.rows();
  Matrix<T> adj(g, g, ops.zero());
  if (g == 1) {
    adj(0, 0) = ops.one();
    return adj;
  }
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      T c = determinant(ops, minor_matrix(a, i, j));
      adj(j, i) = (i + j) % 2 == 0 ? c : ops.neg(c);
    }
  return adj;
}

int min_valuation(const PadicCtx& ctx, const ScalarMatrix& a);
int min_valuation(const PolyMatrix& a);

/// Exact inverse over Z/p^N: adj(A) * det(A)^{-1}. SingularModP unless det is a unit.
ScalarMatrix inverse(const PadicCtx& ctx, const ScalarMatrix& a);

/// Entrywise z = a substitution of a z-polynomial matrix.
ScalarMatrix eval_matrix(const PadicCtx& ctx, const PolyMatrix& a, std::span<const ExtElem> point);
/// Entrywise sigma^k: z -> z^{p^k}.
PolyMatrix frobenius_matrix(const PolyMatrix& a, unsigned k);
/// Entrywise partial derivative in z_i.
PolyMatrix partial_matrix(const PolyMatrix& a, int i);

}  // namespace dworklab
