#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uc/hermitian.hpp"
#include "uc/kmatrix.hpp"
#include "uc/zmodule.hpp"

namespace uc {

using KVec = std::vector<KElement>;

/// O_k-lattice in (k^n, gram) held as a canonical Z-basis. Coordinates of a
/// vector x = sum (a_i + b_i omega) e_i are (a_1, b_1, ..., a_n, b_n).
class HermitianLattice {
 public:
  /// Z-span of the generators and their omega-multiples.
  static HermitianLattice from_generators(const FieldContext& ctx, KMatrix gram, const std::vector<KVec>& gens);
  static HermitianLattice from_basis(const FieldContext& ctx, KMatrix gram, const QMat& rows);

  const FieldContext& ctx() const { return ctx_; }
  int n() const { return gram_.rows; }
  const KMatrix& gram() const { return gram_; }
  const QMat& basis() const { return basis_; }
  const QMat& basis_inverse() const { return inverse_; }

  std::vector<KVec> zgens() const;
  KVec to_kvec(const QVec& coords) const;
  static QVec to_coords(const KVec& x);

  KElement h(const KVec& x, const KVec& y) const { return form_value(ctx_, gram_, x, y); }
  bool contains(const KVec& x) const;
  bool contains(const HermitianLattice& other) const;
  /// Z-Gram matrix of the trace form Re h on the basis.
  QMat trace_gram() const;
  /// Key identifying the Z-module (basis entries).
  std::string key() const;

  friend bool operator==(const HermitianLattice& x, const HermitianLattice& y) {
    return x.basis_ == y.basis_ && x.gram_.e == y.gram_.e;
  }

 private:
  FieldContext ctx_;
  KMatrix gram_;
  QMat basis_;
  QMat inverse_;
};

KVec apply(const FieldContext& ctx, const KVec& x, const KMatrix& phi);  // x * phi
KVec scale(const FieldContext& ctx, const KElement& c, const KVec& x);

HermitianLattice standard_lattice(const FieldContext& ctx, const HermitianMatrix& t);
HermitianLattice dual_lattice(const HermitianLattice& l);

struct SelfDualStatus {
  enum class Kind { selfdual, nearly, other } kind = Kind::other;
  long p = 0;                       // for nearly
  std::vector<Int> quotient_shape;  // elementary divisors of L*/L (> 1), or of L*/(L ∩ L*) when not integral
};
std::string to_string(SelfDualStatus::Kind k);

SelfDualStatus selfdual_status(const HermitianLattice& l);

/// All x in L with h(x, x) = t.
std::vector<KVec> short_vectors(const HermitianLattice& l, const Rational& t);
/// All nonzero x in L with h(x, x) <= bound, with their norms.
std::vector<std::pair<KVec, Rational>> vectors_up_to(const HermitianLattice& l, const Rational& bound);

struct AutGroup {
  long order = 0;
  std::vector<KMatrix> generators;  // acting on row vectors
};
AutGroup aut_group(const HermitianLattice& l);

struct IsometryResult {
  bool isometric = false;
  std::optional<KMatrix> witness;  // phi with x -> x * phi mapping L1 onto L2
};
IsometryResult isometric(const HermitianLattice& a, const HermitianLattice& b);

/// Kneser neighbours at a prime ideal over the split prime ell; the ideal
/// is (ell, omega - rho) for the smaller root rho of the minimal polynomial
/// of omega mod ell.
std::vector<HermitianLattice> neighbors(const HermitianLattice& l, long ell);

/// The smallest split primes not dividing 2 * delta * [L* : L].
std::vector<long> default_aux_primes(const HermitianLattice& l, int count = 2);

struct GenusRecord {
  std::vector<HermitianLattice> classes;
  std::vector<long> aut_orders;
  Rational mass;
};
GenusRecord genus_enumerate(const HermitianLattice& l, std::vector<long> aux_primes = {}, int class_cap = 64);

Int rep_count(const HermitianMatrix& target, const HermitianLattice& l);
Rational r_gen(const HermitianMatrix& target, const GenusRecord& g);

/// Lattice in V_T with L*/L = O/p and self-dual at every other prime.
HermitianLattice nearly_selfdual_in(const FieldContext& ctx, const HermitianMatrix& t, long p);

enum class LatticeType { I, II };
LatticeType lattice_type_at_2(const HermitianLattice& l);

/// A lattice agreeing with L away from 2 whose type at 2 is the other one.
HermitianLattice opposite_type_at_2(const HermitianLattice& l);

/// Number of U(V_2)-orbits of self-dual lattices at 2 for the space of T.
int selfdual_orbits_at_2(const FieldContext& ctx, const HermitianMatrix& t);

}  // namespace uc
