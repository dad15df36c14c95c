#include "uc/kmatrix.hpp"

#include "uc/error.hpp"

namespace uc {

KMatrix KMatrix::identity(int n) {
  KMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i).a = 1;
  return m;
}

KMatrix mul(const FieldContext& ctx, const KMatrix& x, const KMatrix& y) {
  if (x.cols != y.rows) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  KMatrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) out(i, j) = out(i, j) + ctx.mul(x(i, k), y(k, j));
    }
  return out;
}

KMatrix conj_transpose(const FieldContext& ctx, const KMatrix& x) {
  KMatrix out(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out(j, i) = ctx.conj(x(i, j));
  return out;
}

KMatrix conj_entries(const FieldContext& ctx, const KMatrix& x) {
  KMatrix out = x;
  for (auto& v : out.e) v = ctx.conj(v);
  return out;
}

KElement determinant(const FieldContext& ctx, const KMatrix& x) {
  if (x.rows != x.cols) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  KMatrix m = x;
  const int n = m.rows;
  KElement det{1, 0};
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return {0, 0};
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det = ctx.mul(det, m(c, c));
    KElement inv = ctx.inverse(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      KElement f = ctx.mul(m(r, c), inv);
      for (int j = c; j < n; ++j) m(r, j) = m(r, j) - ctx.mul(f, m(c, j));
    }
  }
  return det;
}

KMatrix inverse(const FieldContext& ctx, const KMatrix& x) {
  if (x.rows != x.cols) throw Error(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
  const int n = x.rows;
  KMatrix m = x;
  KMatrix inv = KMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    KElement s = ctx.inverse(m(c, c));
    for (int j = 0; j < n; ++j) {
      m(c, j) = ctx.mul(m(c, j), s);
      inv(c, j) = ctx.mul(inv(c, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      KElement f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - ctx.mul(f, m(c, j));
        inv(r, j) = inv(r, j) - ctx.mul(f, inv(c, j));
      }
    }
  }
  return inv;
}

bool is_hermitian(const FieldContext& ctx, const KMatrix& x) {
  if (x.rows != x.cols) return false;
  for (int i = 0; i < x.rows; ++i)
    for (int j = i; j < x.cols; ++j)
      if (!(x(j, i) == ctx.conj(x(i, j)))) return false;
  return true;
}

KElement form_value(const FieldContext& ctx, const KMatrix& gram, const std::vector<KElement>& x,
                    const std::vector<KElement>& y) {
  KElement out{0, 0};
  const int n = gram.rows;
  for (int j = 0; j < n; ++j) {
    if (y[j].is_zero()) continue;
    KElement acc{0, 0};
    for (int i = 0; i < n; ++i)
      if (!x[i].is_zero()) acc = acc + ctx.mul(x[i], gram(i, j));
    out = out + ctx.mul(acc, ctx.conj(y[j]));
  }
  return out;
}

}  // namespace uc
