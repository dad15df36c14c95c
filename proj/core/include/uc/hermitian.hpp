#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "uc/kmatrix.hpp"
#include "uc/quadfield.hpp"

namespace uc {

/// n x n hermitian matrix with entries in O_k.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

  /// Row-major entries; throws SymmetryError unless conjugate symmetric.
  static HermitianMatrix from_entries(const FieldContext& ctx, int n, std::vector<OkElement> entries);
  static HermitianMatrix diagonal(const std::vector<long>& d);
  static HermitianMatrix identity(int n);

  int size() const { return n_; }
  const OkElement& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<OkElement>& entries() const { return e_; }

  /// Sets (i, j) and its mirror (j, i).
  void set(const FieldContext& ctx, int i, int j, const OkElement& x);

  KMatrix to_k() const;
  bool is_diagonal() const;

  friend bool operator==(const HermitianMatrix& x, const HermitianMatrix& y) {
    return x.n_ == y.n_ && x.e_ == y.e_;
  }

 private:
  int n_ = 0;
  std::vector<OkElement> e_;
};

/// Determinant of a hermitian O_k-matrix (an integer), by fraction-free
/// elimination in Z[omega].
Int det_class(const FieldContext& ctx, const HermitianMatrix& t);

/// U * T * conj(U)^t for a square O_k-matrix U given row-major.
HermitianMatrix congruent(const FieldContext& ctx, const HermitianMatrix& t, const std::vector<OkElement>& u);

/// Local and global invariants of a nondegenerate hermitian space.
struct SpaceInvariants {
  int n = 0;
  std::pair<int, int> sig{0, 0};
  std::map<long, int> inv;  // primes with inv = -1 are listed; others are +1
  Rational det_class{1};

  int inv_at(long p) const {
    auto it = inv.find(p);
    return it == inv.end() ? 1 : it->second;
  }
};

SpaceInvariants space_invariants(const FieldContext& ctx, const HermitianMatrix& t);
SpaceInvariants space_invariants(const FieldContext& ctx, const KMatrix& gram);

/// Signature of a nondegenerate hermitian k-matrix by exact diagonalization.
std::pair<int, int> signature(const FieldContext& ctx, const KMatrix& gram);

struct DiffReport {
  std::vector<long> diff_v;  // Diff(T, V)
  std::vector<long> diff0;   // inert p with ord_p det T odd
};

/// With `v` empty the comparison space is the relevant space of signature
/// (n-1, 1) carrying a self-dual lattice and agreeing with V_T at every
/// ramified prime; when no such space exists (|diff0| even) the smallest
/// ramified prime is flipped as well.
DiffReport diff_sets(const FieldContext& ctx, const HermitianMatrix& t,
                     const std::optional<SpaceInvariants>& v = std::nullopt);

struct LocalJordan {
  long p = 0;
  std::vector<int> exponents;  // non-decreasing
};

LocalJordan local_jordan_inert(const FieldContext& ctx, const HermitianMatrix& t, long p);

struct NondegeneracyReport {
  bool nondeg = false;
  std::optional<int> a;
  std::optional<int> b;
  int r0 = 0;
  int predicted_dim = 0;  // floor((r0 - 1) / 2); -1 when T is unimodular at p
  std::vector<int> exponents;
};

NondegeneracyReport nondegeneracy_report(const FieldContext& ctx, const HermitianMatrix& t, long p);

struct RelevantSpaceCount {
  long count = 0;
  long strict_sim_count = 0;
};

RelevantSpaceCount relevant_space_count(const FieldContext& ctx, int n, std::pair<int, int> signature);

struct LandherrResult {
  SpaceInvariants invariants;
  bool selfdual_feasible = true;
  std::vector<long> obstructed_at;  // inert primes with inv = -1
};

/// Global space with the prescribed signature and finite invariants
/// (unlisted primes carry +1). The determinant class is the smallest
/// squarefree representative realizing all signs.
LandherrResult landherr(const FieldContext& ctx, int n, std::pair<int, int> sig, const std::map<long, int>& inv_spec);

}  // namespace uc
