#include "uc/hermitian.hpp"

#include <algorithm>
#include <set>

#include "uc/error.hpp"
#include "uc/residue.hpp"

namespace uc {

HermitianMatrix HermitianMatrix::from_entries(const FieldContext& ctx, int n, std::vector<OkElement> entries) {
  if (n < 1 || entries.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorCode::SchemaError, "expected " + std::to_string(n) + "x" + std::to_string(n) + " entries");
  HermitianMatrix m(n);
  m.e_ = std::move(entries);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!(m(j, i) == ctx.conj(m(i, j))))
        throw Error(ErrorCode::SymmetryError,
                    "entry (" + std::to_string(j) + "," + std::to_string(i) + ") is not the conjugate of (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<long>& d) {
  HermitianMatrix m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.e_[i * d.size() + i].a = d[i];
  return m;
}

HermitianMatrix HermitianMatrix::identity(int n) { return diagonal(std::vector<long>(static_cast<std::size_t>(n), 1)); }

void HermitianMatrix::set(const FieldContext& ctx, int i, int j, const OkElement& x) {
  e_[static_cast<std::size_t>(i) * n_ + j] = x;
  e_[static_cast<std::size_t>(j) * n_ + i] = ctx.conj(x);
  if (i == j && x.b != 0) throw Error(ErrorCode::SymmetryError, "diagonal entries must be rational");
}

KMatrix HermitianMatrix::to_k() const {
  KMatrix m(n_, n_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e[i] = uc::to_k(e_[i]);
  return m;
}

bool HermitianMatrix::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

Int det_class(const FieldContext& ctx, const HermitianMatrix& t) {
  const int n = t.size();
  std::vector<OkElement> m = t.entries();
  auto at = [&](int i, int j) -> OkElement& { return m[static_cast<std::size_t>(i) * n + j]; };
  OkElement prev{1, 0};
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k).is_zero()) {
      int r = k + 1;
      while (r < n && at(r, k).is_zero()) ++r;
      if (r == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        OkElement num = ctx.mul(at(k, k), at(i, j)) - ctx.mul(at(i, k), at(k, j));
        at(i, j) = ctx.div_exact(num, prev);
      }
    prev = at(k, k);
  }
  OkElement d = at(n - 1, n - 1);
  if (d.b != 0) throw Error(ErrorCode::SymmetryError, "determinant is not rational");
  return sign * d.a;
}

HermitianMatrix congruent(const FieldContext& ctx, const HermitianMatrix& t, const std::vector<OkElement>& u) {
  const int n = t.size();
  KMatrix um(n, n);
  for (std::size_t i = 0; i < u.size(); ++i) um.e[i] = to_k(u[i]);
  KMatrix r = mul(ctx, mul(ctx, um, t.to_k()), conj_transpose(ctx, um));
  std::vector<OkElement> out(r.e.size());
  for (std::size_t i = 0; i < r.e.size(); ++i) out[i] = {r.e[i].a.get_num(), r.e[i].b.get_num()};
  return HermitianMatrix::from_entries(ctx, n, std::move(out));
}

std::pair<int, int> signature(const FieldContext& ctx, const KMatrix& gram) {
  const int n = gram.rows;
  KMatrix h = gram;
  std::vector<int> active(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
  int pos = 0, neg = 0;
  while (!active.empty()) {
    int pick = -1;
    for (std::size_t s = 0; s < active.size(); ++s)
      if (!h(active[s], active[s]).is_zero()) {
        pick = static_cast<int>(s);
        break;
      }
    if (pick < 0) {
      // all diagonal entries vanish: e_i <- e_i + c e_j for a nonzero off-diagonal h_ij
      int si = -1, sj = -1;
      for (std::size_t s = 0; s < active.size() && si < 0; ++s)
        for (std::size_t t = s + 1; t < active.size(); ++t)
          if (!h(active[s], active[t]).is_zero()) {
            si = static_cast<int>(s);
            sj = static_cast<int>(t);
            break;
          }
      if (si < 0) throw Error(ErrorCode::SingularMatrix, "degenerate hermitian form");
      int i = active[static_cast<std::size_t>(si)], j = active[static_cast<std::size_t>(sj)];
      const KElement cands[2] = {{1, 0}, {0, 1}};
      for (const KElement& c : cands) {
        KElement cc = ctx.conj(c);
        KElement d = ctx.mul(cc, h(i, j)) + ctx.mul(c, h(j, i));
        if (d.is_zero()) continue;
        for (int l : active) {
          if (l == i) continue;
          h(i, l) = h(i, l) + ctx.mul(c, h(j, l));
          h(l, i) = h(l, i) + ctx.mul(cc, h(l, j));
        }
        h(i, i) = d;  // h_ii = h_jj = 0 here
        break;
      }
      pick = si;
    }
    int i = active[static_cast<std::size_t>(pick)];
    const KElement piv = h(i, i);
    if (piv.a > 0) ++pos;
    else ++neg;
    KElement inv = ctx.inverse(piv);
    for (int l : active) {
      if (l == i) continue;
      KElement f = ctx.mul(h(l, i), inv);
      for (int r : active) {
        if (r == i) continue;
        h(l, r) = h(l, r) - ctx.mul(f, h(i, r));
      }
    }
    active.erase(active.begin() + pick);
  }
  return {pos, neg};
}

namespace {

SpaceInvariants invariants_from(const FieldContext& ctx, int n, std::pair<int, int> sig, const Rational& d) {
  SpaceInvariants out;
  out.n = n;
  out.sig = sig;
  out.det_class = d;
  auto primes = prime_divisors(d * ctx.delta() * 2);
  for (long p : primes) {
    int s = ctx.hilbert_chi(d, p);
    if (s < 0) out.inv[p] = -1;
  }
  return out;
}

}  // namespace

SpaceInvariants space_invariants(const FieldContext& ctx, const HermitianMatrix& t) {
  Int d = det_class(ctx, t);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, "det(T) = 0");
  return invariants_from(ctx, t.size(), signature(ctx, t.to_k()), Rational(d));
}

SpaceInvariants space_invariants(const FieldContext& ctx, const KMatrix& gram) {
  KElement d = determinant(ctx, gram);
  if (d.is_zero()) throw Error(ErrorCode::SingularMatrix, "det = 0");
  return invariants_from(ctx, gram.rows, signature(ctx, gram), d.a);
}

DiffReport diff_sets(const FieldContext& ctx, const HermitianMatrix& t, const std::optional<SpaceInvariants>& v) {
  Int d = det_class(ctx, t);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, "det(T) = 0");
  DiffReport out;
  auto primes = prime_divisors(Int(d * ctx.delta() * 2));
  for (long p : primes)
    if (p != 2 || ctx.splitting(2) == SplitType::inert)
      if (ctx.splitting(p) == SplitType::inert && (valuation(d, p) & 1)) out.diff0.push_back(p);

  if (v) {
    std::set<long> support(primes.begin(), primes.end());
    for (const auto& [p, s] : v->inv) support.insert(p);
    for (long p : support)
      if (ctx.hilbert_chi(Rational(d), p) != v->inv_at(p)) out.diff_v.push_back(p);
    return out;
  }
  out.diff_v = out.diff0;
  const int chi_inf = d < 0 ? -1 : 1;
  const int parity = (out.diff0.size() % 2 == 0) ? 1 : -1;
  if (chi_inf * parity == 1 && !ctx.delta_primes().empty()) {
    out.diff_v.push_back(ctx.delta_primes().front());
    std::sort(out.diff_v.begin(), out.diff_v.end());
  }
  return out;
}

LocalJordan local_jordan_inert(const FieldContext& ctx, const HermitianMatrix& t, long p) {
  if (p == 2) throw Error(ErrorCode::EvenPrime, "Jordan reduction needs an odd prime");
  if (ctx.splitting(p) != SplitType::inert)
    throw Error(ErrorCode::NotInert, std::to_string(p) + " is " + std::string(to_string(ctx.splitting(p))));
  Int d = det_class(ctx, t);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, "det(T) = 0");
  const int n = t.size();
  if (n > kMaxResidueDim) throw Error(ErrorCode::BadSize, "matrix too large for the residue kernel");
  const int level = valuation(d, p) + 1;
  ResidueRing ring(ctx, p, level);
  std::vector<Res> h(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = ring.reduce(t.entries()[i]);
  LocalJordan out;
  out.p = p;
  out.exponents.resize(static_cast<std::size_t>(n));
  jordan_exponents(ring, h.data(), n, out.exponents.data());
  return out;
}

NondegeneracyReport nondegeneracy_report(const FieldContext& ctx, const HermitianMatrix& t, long p) {
  const int n = t.size();
  if (n < 2) throw Error(ErrorCode::BadSize, "nondegeneracy needs n >= 2");
  auto sig = signature(ctx, t.to_k());
  if (sig.second != 0) throw Error(ErrorCode::IndefiniteForm, "T must be positive definite");
  NondegeneracyReport out;
  out.exponents = local_jordan_inert(ctx, t, p).exponents;
  out.r0 = static_cast<int>(std::count_if(out.exponents.begin(), out.exponents.end(), [](int e) { return e > 0; }));
  out.predicted_dim = out.r0 >= 1 ? (out.r0 - 1) / 2 : -1;
  bool leading_units = std::all_of(out.exponents.begin(), out.exponents.end() - 2, [](int e) { return e == 0; });
  int a = out.exponents[static_cast<std::size_t>(n - 2)];
  int b = out.exponents[static_cast<std::size_t>(n - 1)];
  if (leading_units && a < b && ((a + b) & 1)) {
    out.nondeg = true;
    out.a = a;
    out.b = b;
  }
  return out;
}

RelevantSpaceCount relevant_space_count(const FieldContext& ctx, int n, std::pair<int, int> signature) {
  if (n < 1 || signature.first < 0 || signature.second < 0 || signature.first + signature.second != n)
    throw Error(ErrorCode::InvalidArgument, "signature does not match n");
  const long count = 1L << (ctx.ramified_count() - 1);
  return {count, n % 2 == 0 ? count : 1};
}

LandherrResult landherr(const FieldContext& ctx, int n, std::pair<int, int> sig, const std::map<long, int>& inv_spec) {
  if (n < 1 || sig.first < 0 || sig.second < 0 || sig.first + sig.second != n)
    throw Error(ErrorCode::InvalidArgument, "signature does not match n");
  int product = (sig.second % 2 == 0) ? 1 : -1;
  for (const auto& [p, s] : inv_spec) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "invariants are signs");
    if (s == -1 && ctx.splitting(p) == SplitType::split)
      throw Error(ErrorCode::SplitPrimeSign, "inv must be +1 at the split prime " + std::to_string(p));
    product *= s;
  }
  if (product != 1) throw Error(ErrorCode::ProductFormulaViolation, "local invariants multiply to -1");

  LandherrResult out;
  out.invariants.n = n;
  out.invariants.sig = sig;
  for (const auto& [p, s] : inv_spec)
    if (s == -1) {
      out.invariants.inv[p] = -1;
      if (ctx.splitting(p) == SplitType::inert) {
        out.selfdual_feasible = false;
        out.obstructed_at.push_back(p);
      }
    }

  const long sign = (sig.second % 2 == 0) ? 1 : -1;
  for (long m = 1; m < 10'000'000; ++m) {
    bool sqfree = true;
    for (long q = 2; q * q <= m && sqfree; ++q)
      if (m % (q * q) == 0) sqfree = false;
    if (!sqfree) continue;
    Rational d(sign * m);
    std::set<long> support;
    for (long p : prime_divisors(Int(d * ctx.delta() * 2))) support.insert(p);
    for (const auto& [p, s] : inv_spec) support.insert(p);
    bool ok = true;
    for (long p : support)
      if (ctx.hilbert_chi(d, p) != out.invariants.inv_at(p)) {
        ok = false;
        break;
      }
    if (ok) {
      out.invariants.det_class = d;
      return out;
    }
  }
  throw Error(ErrorCode::Overflow, "no determinant representative found in the search range");
}

}  // namespace uc
