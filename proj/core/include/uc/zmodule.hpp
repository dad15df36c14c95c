#pragma once

#include <optional>
#include <vector>

#include "uc/arith.hpp"

namespace uc {

using ZVec = std::vector<Int>;
using QVec = std::vector<Rational>;
using ZMat = std::vector<ZVec>;  // row-major, rows are vectors
using QMat = std::vector<QVec>;

/// Row-style Hermite normal form of the row span; zero rows dropped.
/// Pivots positive, entries above a pivot reduced into [0, pivot).
ZMat hnf(ZMat rows);

/// Canonical Z-basis of the lattice spanned by rational rows: HNF of the
/// scaled integer rows divided by the common denominator.
QMat lattice_basis(const QMat& gens);

/// Diagonal of the Smith form of an integer matrix (nonzero entries only).
std::vector<Int> smith_diagonal(ZMat m);

QMat transpose(const QMat& m);
QMat mat_mul(const QMat& a, const QMat& b);
QVec vec_mul(const QVec& v, const QMat& m);
/// Throws SingularMatrix.
QMat mat_inverse(const QMat& m);
Rational mat_det(QMat m);

/// Coordinates of v in the basis rows (square, invertible); empty when
/// they are not all integers.
std::optional<ZVec> integral_coords(const QVec& v, const QMat& basis_inverse);

/// Elementary divisors of sub inside sup (both full-rank bases of the same
/// space); throws InvalidArgument when sub is not contained in sup.
std::vector<Int> relative_divisors(const QMat& sub, const QMat& sup);

}  // namespace uc
