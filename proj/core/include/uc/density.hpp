#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uc/hermitian.hpp"

namespace uc {

enum class CountStrategy {
  orbit,      // class-function recursion over rows of S, orbit-compressed
  enumerate,  // column-recursive search with congruence pruning
};

/// Memo for residue counts, keyed by (delta, S, T, p, k).
class CountCache {
 public:
  virtual ~CountCache() = default;
  virtual std::optional<Int> get(const std::string& key) = 0;
  virtual void put(const std::string& key, const Int& count) = 0;
};

struct CountOptions {
  CountStrategy strategy = CountStrategy::orbit;
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 1;  // enumerate only; partitions the first column
  CountCache* cache = nullptr;
};

std::string count_key(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p, int k);

/// #{x in M_{m,n}(O_k/p^k) : S[x] = T mod p^k} for an odd inert prime p.
Int brute_A(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p, int k,
            const CountOptions& opt = {});

struct ResidueCount {
  long p = 0;
  int k = 0;
  Int count;
  Rational scaled;  // count * p^{-k n (2m - n)}
};

ResidueCount residue_count(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                           int k, const CountOptions& opt = {});

struct AlphaResult {
  Rational value;
  int k_used = 0;  // first level of the agreeing pair
  Int count;       // count at k_used
  std::vector<ResidueCount> levels;
};

/// Stabilized density. Starts at one past the largest Jordan exponent of T
/// and raises k until two consecutive scaled counts agree.
AlphaResult alpha(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                  const CountOptions& opt = {}, int max_k = 8);

/// 1/2 sum_{l=0}^{a} p^l (a + b + 1 - 2l).
Rational mu(int a, int b, long p);

Rational alpha_selfdual(int n, long p);
Rational alpha_nearly(int n, long p);
Rational alpha_reduction_rhs(int n, long p);

/// S bordered by r hyperbolic planes [[0,1],[1,0]].
HermitianMatrix hyperbolic_augment(const FieldContext& ctx, const HermitianMatrix& s, int r);

struct DensityPolynomial {
  long p = 0;
  std::vector<Rational> coeffs;  // ascending powers of X
  std::vector<std::pair<int, Rational>> support_points;  // (r, alpha(S_r, T))

  Rational evaluate(const Rational& x) const;
  Rational derivative_at(const Rational& x) const;
  int degree() const;
};

/// Fits F with F((-p)^{-r}) = alpha(S_r, T) through r = 0..deg and checks
/// r = deg + 1 exactly. Throws FitMismatch on disagreement.
DensityPolynomial density_poly(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                               int deg, const CountOptions& opt = {});

/// Normalization of the central derivative, alpha' = kappa * F'(1), fixed on
/// the instance delta = -4, S = (1), T = (3), p = 3 where alpha' must be 4/3.
/// Computed once and cached.
Rational derivative_kappa(const CountOptions& opt = {});

/// Central derivative of the density polynomial; the degree starts at n and
/// is raised on FitMismatch.
Rational alpha_prime(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                     const CountOptions& opt = {});

}  // namespace uc
