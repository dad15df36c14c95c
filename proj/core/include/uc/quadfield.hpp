#pragma once

#include <string_view>
#include <vector>

#include "uc/arith.hpp"

namespace uc {

enum class SplitType { split, inert, ramified };

std::string_view to_string(SplitType t);

/// Element a + b*omega of k, with omega = (delta + sqrt(delta)) / 2.
/// `Quad<Int>` is an element of O_k, `Quad<Rational>` a general element of k.
template <class R>
struct Quad {
  R a{0};
  R b{0};

  friend bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }
  friend Quad operator+(const Quad& x, const Quad& y) { return {x.a + y.a, x.b + y.b}; }
  friend Quad operator-(const Quad& x, const Quad& y) { return {x.a - y.a, x.b - y.b}; }
  friend Quad operator-(const Quad& x) { return {-x.a, -x.b}; }
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
};

using OkElement = Quad<Int>;
using KElement = Quad<Rational>;

inline KElement to_k(const OkElement& x) { return {Rational(x.a), Rational(x.b)}; }

// Place index used by Hilbert symbols: a rational prime, or kInfinity.
inline constexpr long kInfinity = 0;

// (a, b)_v for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, long v);

class FieldContext {
 public:
  /// Validates `delta` as a negative fundamental discriminant and computes
  /// the class number by enumerating reduced binary quadratic forms.
  static FieldContext make(long delta);

  long delta() const { return delta_; }
  const std::vector<long>& delta_primes() const { return delta_primes_; }
  int ramified_count() const { return static_cast<int>(delta_primes_.size()); }
  long class_number() const { return h_; }
  int unit_count() const { return w_; }

  // omega satisfies omega^2 = delta*omega - omega_norm.
  long omega_trace() const { return delta_; }
  long omega_norm() const { return omega_norm_; }

  template <class R>
  Quad<R> mul(const Quad<R>& x, const Quad<R>& y) const {
    R bd = x.b * y.b;
    return {x.a * y.a - bd * omega_norm_, x.a * y.b + x.b * y.a + bd * delta_};
  }
  template <class R>
  Quad<R> conj(const Quad<R>& x) const {
    return {x.a + x.b * delta_, -x.b};
  }
  template <class R>
  R norm(const Quad<R>& x) const {
    return x.a * x.a + x.a * x.b * delta_ + x.b * x.b * omega_norm_;
  }
  template <class R>
  R trace(const Quad<R>& x) const {
    return 2 * x.a + x.b * delta_;
  }
  KElement inverse(const KElement& x) const;
  KElement div(const KElement& x, const KElement& y) const { return mul(x, inverse(y)); }
  // Exact quotient in O_k; throws InvalidArgument when y does not divide x.
  OkElement div_exact(const OkElement& x, const OkElement& y) const;
  bool divides(const OkElement& y, const OkElement& x) const;

  SplitType splitting(long p) const;

  /// chi_v(a) = (a, delta)_v; v a prime or kInfinity.
  int hilbert_chi(const Rational& a, long v) const;

 private:
  long delta_ = 0;
  long omega_norm_ = 0;
  std::vector<long> delta_primes_;
  long h_ = 0;
  int w_ = 0;
};

bool is_fundamental_discriminant(long delta);

struct ReducedForm {
  long a, b, c;
};
// Reduced primitive positive definite forms of discriminant delta < 0.
std::vector<ReducedForm> reduced_forms(long delta);

/// Number of geometrically irreducible components of the generic fibre of the
/// moduli space of signature (n-r, r) for a fixed relevant datum.
long moduli_component_count(const FieldContext& ctx, int n, bool exceptional_2adic);

}  // namespace uc
