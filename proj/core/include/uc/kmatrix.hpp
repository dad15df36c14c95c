#pragma once

#include <vector>

#include "uc/quadfield.hpp"

namespace uc {

/// Dense matrix over k, row-major.
struct KMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<KElement> e;

  KMatrix() = default;
  KMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}

  static KMatrix identity(int n);

  KElement& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  const KElement& operator()(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }

  friend bool operator==(const KMatrix& x, const KMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.e == y.e;
  }
};

KMatrix mul(const FieldContext& ctx, const KMatrix& x, const KMatrix& y);
KMatrix conj_transpose(const FieldContext& ctx, const KMatrix& x);
KMatrix conj_entries(const FieldContext& ctx, const KMatrix& x);
KElement determinant(const FieldContext& ctx, const KMatrix& x);
// Throws SingularMatrix.
KMatrix inverse(const FieldContext& ctx, const KMatrix& x);
bool is_hermitian(const FieldContext& ctx, const KMatrix& x);
// Row vector x times g times conj(y)^t.
KElement form_value(const FieldContext& ctx, const KMatrix& gram, const std::vector<KElement>& x,
                    const std::vector<KElement>& y);

}  // namespace uc
