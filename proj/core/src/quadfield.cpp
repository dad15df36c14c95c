#include "uc/quadfield.hpp"

#include <cmath>
#include <numeric>

#include "uc/error.hpp"

namespace uc {

std::string_view to_string(SplitType t) {
  switch (t) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

namespace {

bool squarefree(long m) {
  m = std::labs(m);
  for (long d = 2; d * d <= m; ++d)
    if (m % (d * d) == 0) return false;
  return true;
}

// Splits an integer as p^v * u with u prime to p.
int split_off(Int& z, long p) {
  int v = 0;
  while (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int hilbert_int(Int a, Int b, long v) {
  if (v == kInfinity) return (a < 0 && b < 0) ? -1 : 1;
  int alpha = split_off(a, v);
  int beta = split_off(b, v);
  if (v == 2) {
    auto mod8 = [](const Int& u) { return floor_mod(Int(u % 8).get_si(), 8); };
    long u = mod8(a), w = mod8(b);
    int eps_u = static_cast<int>(((u - 1) / 2) & 1);
    int eps_w = static_cast<int>(((w - 1) / 2) & 1);
    int om_u = static_cast<int>(((u * u - 1) / 8) & 1);
    int om_w = static_cast<int>(((w * w - 1) / 8) & 1);
    int e = eps_u * eps_w + alpha * om_w + beta * om_u;
    return (e & 1) ? -1 : 1;
  }
  int sign = 1;
  if ((alpha & 1) && (beta & 1) && (((v - 1) / 2) & 1)) sign = -sign;
  if (beta & 1) sign *= legendre(a, v);
  if (alpha & 1) sign *= legendre(b, v);
  return sign;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, long v) {
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroArgument, "Hilbert symbol of zero");
  // Multiplying by the square of the denominator leaves the symbol unchanged.
  Int ai = a.get_num() * a.get_den();
  Int bi = b.get_num() * b.get_den();
  return hilbert_int(ai, bi, v);
}

bool is_fundamental_discriminant(long delta) {
  long r = floor_mod(delta, 4);
  if (r == 1) return squarefree(delta);
  if (r != 0) return false;
  long m = delta / 4;
  long rm = floor_mod(m, 4);
  return (rm == 2 || rm == 3) && squarefree(m);
}

std::vector<ReducedForm> reduced_forms(long delta) {
  std::vector<ReducedForm> out;
  long bound = static_cast<long>(std::sqrt(static_cast<double>(-delta) / 3.0)) + 1;
  for (long a = 1; a <= bound; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - delta;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

FieldContext FieldContext::make(long delta) {
  if (delta >= 0) throw Error(ErrorCode::NonNegative, "discriminant must be negative");
  if (!is_fundamental_discriminant(delta))
    throw Error(ErrorCode::NonFundamental, std::to_string(delta) + " is not a fundamental discriminant");
  FieldContext ctx;
  ctx.delta_ = delta;
  ctx.omega_norm_ = (delta * delta - delta) / 4;
  ctx.delta_primes_ = prime_divisors(Int(delta));
  ctx.h_ = static_cast<long>(reduced_forms(delta).size());
  ctx.w_ = delta == -4 ? 4 : (delta == -3 ? 6 : 2);
  return ctx;
}

KElement FieldContext::inverse(const KElement& x) const {
  Rational n = norm(x);
  if (n == 0) throw Error(ErrorCode::ZeroArgument, "inverse of zero");
  KElement c = conj(x);
  return {c.a / n, c.b / n};
}

bool FieldContext::divides(const OkElement& y, const OkElement& x) const {
  if (y.is_zero()) return x.is_zero();
  Int n = norm(y);
  OkElement t = mul(x, conj(y));
  return mpz_divisible_p(t.a.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(t.b.get_mpz_t(), n.get_mpz_t());
}

OkElement FieldContext::div_exact(const OkElement& x, const OkElement& y) const {
  if (!divides(y, x)) throw Error(ErrorCode::InvalidArgument, "inexact division in O_k");
  Int n = norm(y);
  OkElement t = mul(x, conj(y));
  return {t.a / n, t.b / n};
}

SplitType FieldContext::splitting(long p) const {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  int k = kronecker(delta_, p);
  if (k == 0) return SplitType::ramified;
  return k > 0 ? SplitType::split : SplitType::inert;
}

int FieldContext::hilbert_chi(const Rational& a, long v) const {
  if (a == 0) throw Error(ErrorCode::ZeroArgument, "chi of zero");
  return hilbert_symbol(a, Rational(delta_), v);
}

long moduli_component_count(const FieldContext& ctx, int n, bool exceptional_2adic) {
  if (n < 2) throw Error(ErrorCode::UnsupportedCase, "n must be at least 2");
  const long h = ctx.class_number();
  const int delta_count = ctx.ramified_count();
  if (n % 2 == 1) {
    if (exceptional_2adic) throw Error(ErrorCode::UnsupportedCase, "the exceptional 2-adic case needs n even");
    return h;
  }
  if (!exceptional_2adic) {
    // 2^{1-delta} h; h is divisible by 2^{delta-1} by genus theory.
    if (delta_count == 0) return 2 * h;
    return h >> (delta_count - 1);
  }
  const long d = ctx.delta();
  if (floor_mod(d, 4) != 0 || floor_mod(d / 4, 2) == 0)
    throw Error(ErrorCode::UnsupportedCase, "the exceptional case needs ord_2(delta) = 2");
  if (d == -4) return 1;
  if (delta_count >= 2) return h >> (delta_count - 2);
  return 2 * h;
}

}  // namespace uc
