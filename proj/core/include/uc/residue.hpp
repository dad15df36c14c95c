#pragma once

#include <cstdint>
#include <vector>

#include "uc/quadfield.hpp"

namespace uc {

/// Element a + b*omega of O_k / p^k O_k.
struct Res {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const Res& x, const Res& y) { return x.a == y.a && x.b == y.b; }
};

/// Arithmetic in O_k / p^k for an odd prime p inert in k. For such p,
/// {1, omega} is an O_{k,p}-basis and the valuation of a + b*omega is
/// min(v(a), v(b)).
class ResidueRing {
 public:
  ResidueRing(const FieldContext& ctx, long p, int k);

  long p() const { return p_; }
  int k() const { return k_; }
  std::int64_t modulus() const { return q_; }
  std::int64_t pow_p(int e) const { return pow_[static_cast<std::size_t>(e)]; }

  std::int64_t red(std::int64_t x) const {
    x %= q_;
    return x < 0 ? x + q_ : x;
  }
  Res reduce(const OkElement& x) const;
  Res add(Res x, Res y) const { return {red(x.a + y.a), red(x.b + y.b)}; }
  Res sub(Res x, Res y) const { return {red(x.a - y.a), red(x.b - y.b)}; }
  Res mul(Res x, Res y) const {
    std::int64_t bd = (x.b * y.b) % q_;
    return {red(x.a * y.a - bd * wn_), red(x.a * y.b + x.b * y.a + bd * tr_)};
  }
  Res scale(Res x, std::int64_t s) const { return {red(x.a * s), red(x.b * s)}; }
  Res conj(Res x) const { return {red(x.a + x.b * tr_), red(-x.b)}; }
  std::int64_t norm(Res x) const { return red(x.a * x.a + red(x.a * x.b) * tr_ + red(x.b * x.b) * wn_); }

  /// Valuation in [0, k]; k for zero.
  int val(std::int64_t x) const {
    if (x == 0) return k_;
    int v = 0;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    return v;
  }
  int val(Res x) const {
    int va = val(x.a), vb = val(x.b);
    return va < vb ? va : vb;
  }
  std::int64_t inv_int(std::int64_t u) const;  // u a unit mod p

 private:
  long p_;
  int k_;
  std::int64_t q_;
  std::int64_t tr_;  // trace of omega mod q
  std::int64_t wn_;  // norm of omega mod q
  std::vector<std::int64_t> pow_;
};

inline constexpr int kMaxResidueDim = 24;

/// Jordan exponents of an n x n hermitian matrix over O_k / p^k, sorted
/// ascending; an exponent equal to k marks a block that vanishes mod p^k.
/// `h` is row-major and is destroyed.
void jordan_exponents(const ResidueRing& ring, Res* h, int n, int* out);

}  // namespace uc
