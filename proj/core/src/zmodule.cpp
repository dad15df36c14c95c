#include "uc/zmodule.hpp"

#include <algorithm>

#include "uc/error.hpp"

namespace uc {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void axpy_row(ZVec& dst, const Int& q, const ZVec& src) {
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

ZMat ztranspose(const ZMat& m) {
  if (m.empty()) return {};
  ZMat t(m[0].size(), ZVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

bool is_diagonal(const ZMat& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (i != j && m[i][j] != 0) return false;
  return true;
}

}  // namespace

ZMat hnf(ZMat a) {
  if (a.empty()) return a;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        axpy_row(a[i], floor_div(a[i][c], a[r][c]), a[r]);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) axpy_row(a[i], floor_div(a[i][c], a[r][c]), a[r]);
    ++r;
  }
  a.resize(r);
  return a;
}

QMat lattice_basis(const QMat& gens) {
  if (gens.empty()) return {};
  Int den = 1;
  for (const auto& row : gens)
    for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  ZMat z(gens.size(), ZVec(gens[0].size()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens[i].size(); ++j) {
      Rational s = gens[i][j] * den;
      z[i][j] = s.get_num();
    }
  ZMat h = hnf(std::move(z));
  QMat out(h.size(), QVec(h.empty() ? 0 : h[0].size()));
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h[i].size(); ++j) {
      out[i][j] = Rational(h[i][j], den);
      out[i][j].canonicalize();
    }
  return out;
}

std::vector<Int> smith_diagonal(ZMat m) {
  while (!is_diagonal(m)) {
    m = hnf(std::move(m));
    m = ztranspose(hnf(ztranspose(m)));
  }
  std::vector<Int> d;
  for (std::size_t i = 0; i < m.size() && i < (m.empty() ? 0 : m[0].size()); ++i)
    if (m[i][i] != 0) d.push_back(abs(m[i][i]));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Int g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  return d;
}

QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat t(m[0].size(), QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  QMat out(a.size(), QVec(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

QVec vec_mul(const QVec& v, const QMat& m) {
  QVec out(m.empty() ? 0 : m[0].size(), 0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m[k].size(); ++j) out[j] += v[k] * m[k][j];
  }
  return out;
}

QMat mat_inverse(const QMat& m) {
  const std::size_t n = m.size();
  QMat a = m, inv(n, QVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == n) throw Error(ErrorCode::SingularMatrix, "rational matrix is singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Rational mat_det(QMat a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

std::optional<ZVec> integral_coords(const QVec& v, const QMat& basis_inverse) {
  QVec c = vec_mul(v, basis_inverse);
  ZVec out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].get_den() != 1) return std::nullopt;
    out[i] = c[i].get_num();
  }
  return out;
}

std::vector<Int> relative_divisors(const QMat& sub, const QMat& sup) {
  QMat inv = mat_inverse(sup);
  ZMat coords;
  for (const auto& row : sub) {
    auto c = integral_coords(row, inv);
    if (!c) throw Error(ErrorCode::InvalidArgument, "lattice is not contained in the reference lattice");
    coords.push_back(*c);
  }
  return smith_diagonal(std::move(coords));
}

}  // namespace uc
