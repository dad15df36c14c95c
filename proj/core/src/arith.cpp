#include "uc/arith.hpp"

#include <algorithm>
#include <cctype>

#include "uc/error.hpp"

namespace uc {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFundamental: return "NonFundamental";
    case ErrorCode::NonNegative: return "NonNegative";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotInert: return "NotInert";
    case ErrorCode::EvenPrime: return "EvenPrime";
    case ErrorCode::ProductFormulaViolation: return "ProductFormulaViolation";
    case ErrorCode::SplitPrimeSign: return "SplitPrimeSign";
    case ErrorCode::IndefiniteForm: return "IndefiniteForm";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::UnsupportedLocale: return "UnsupportedLocale";
    case ErrorCode::NotRamifiedAt2: return "NotRamifiedAt2";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NonStabilized: return "NonStabilized";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::BadSize: return "BadSize";
    case ErrorCode::FitMismatch: return "FitMismatch";
    case ErrorCode::NotIncoherentLocal: return "NotIncoherentLocal";
    case ErrorCode::NotNondegenerate: return "NotNondegenerate";
    case ErrorCode::DegenerateT: return "DegenerateT";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SymmetryError: return "SymmetryError";
    case ErrorCode::SuiteUnknown: return "SuiteUnknown";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return Error(ErrorCode::SchemaError, "not a rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto digits_ok = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Int d(den);
  if (d == 0) throw bad();
  Rational q(Int(num), d);
  q.canonicalize();
  return q;
}

Int ipow(long base, unsigned exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exp);
  if (base < 0 && (exp & 1U)) r = -r;
  return r;
}

Rational rpow(long base, int exp) {
  if (exp >= 0) return Rational(ipow(base, static_cast<unsigned>(exp)));
  Rational r(Int(1), ipow(base, static_cast<unsigned>(-exp)));
  r.canonicalize();
  return r;
}

int valuation(const Int& z, long p) {
  if (z == 0) throw Error(ErrorCode::ZeroArgument, "valuation of zero");
  Int t = z;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int valuation(const Rational& q, long p) {
  return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_divisors(const Int& z) {
  std::vector<long> out;
  Int t = abs(z);
  if (t == 0) return out;
  for (unsigned long d = 2; Int(d) * d <= t; ++d) {
    if (mpz_divisible_ui_p(t.get_mpz_t(), d)) {
      out.push_back(static_cast<long>(d));
      while (mpz_divisible_ui_p(t.get_mpz_t(), d)) mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), d);
    }
  }
  if (t > 1) {
    if (!t.fits_slong_p()) throw Error(ErrorCode::Overflow, "prime factor exceeds machine range");
    out.push_back(t.get_si());
  }
  return out;
}

std::vector<long> prime_divisors(const Rational& q) {
  auto a = prime_divisors(Int(q.get_num()));
  auto b = prime_divisors(Int(q.get_den()));
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

int legendre(const Int& a, long p) {
  Int pp(p);
  return mpz_legendre(Int(a % pp + pp).get_mpz_t(), pp.get_mpz_t());
}

int kronecker(long d, long p) {
  if (p == 2) {
    if (d % 2 == 0) return 0;
    long r = floor_mod(d, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  if (d % p == 0) return 0;
  return legendre(Int(d), p);
}

long mod_inverse(long a, long m) {
  long t = 0, nt = 1, r = m, nr = floor_mod(a, m);
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw Error(ErrorCode::InvalidArgument, "not invertible modulo m");
  return floor_mod(t, m);
}

}  // namespace uc
