#include "uc/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "uc/error.hpp"

namespace uc {

namespace {

Rational re(const FieldContext& ctx, const KElement& x) { return ctx.trace(x) / 2; }

bool is_integral(const Rational& q) { return q.get_den() == 1; }

// q-adically integral: denominator prime to q.
bool q_integral(const Rational& x, long q) { return mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(q)) == 0; }

// x mod q for a q-integral rational.
long reduce_mod(const Rational& x, long q) {
  Int num = x.get_num() % q, den = x.get_den() % q;
  long n = floor_mod(num.get_si(), q), d = floor_mod(den.get_si(), q);
  return floor_mod(n * mod_inverse(d, q), q);
}

int two_adic_valuation(const Rational& x) { return x == 0 ? 1 << 20 : valuation(x, 2); }

std::string kmatrix_key(const KMatrix& m) {
  std::string s;
  for (const auto& x : m.e) s += to_string(x.a) + "," + to_string(x.b) + ";";
  return s;
}

KMatrix kmat_from_rows(const std::vector<KVec>& rows) {
  const int n = static_cast<int>(rows.size());
  KMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

// Rank over k of a list of vectors.
int k_rank(const FieldContext& ctx, std::vector<KVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < n && static_cast<std::size_t>(rank) < rows.size(); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r)
      if (!rows[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const KVec& p = rows[static_cast<std::size_t>(rank)];
    KElement inv = ctx.inverse(p[c]);
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      KElement f = ctx.mul(rows[r][c], inv);
      for (std::size_t j = c; j < n; ++j) rows[r][j] = rows[r][j] - ctx.mul(f, p[j]);
    }
    ++rank;
  }
  return rank;
}

void require_positive(const HermitianLattice& l) {
  auto sig = signature(l.ctx(), l.gram());
  if (sig.second != 0) throw Error(ErrorCode::IndefiniteForm, "the ambient form must be positive definite");
}

// Fincke-Pohst enumeration of nonzero integer vectors with v B v^t <= bound.
std::vector<std::pair<ZVec, Rational>> fincke_pohst(const QMat& gram, const Rational& bound) {
  const std::size_t n = gram.size();
  QMat q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw Error(ErrorCode::IndefiniteForm, "trace form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  std::vector<std::pair<ZVec, Rational>> out;
  ZVec x(n, 0);
  std::function<void(long, const Rational&)> rec = [&](long i, const Rational& rem) {
    if (i < 0) {
      bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
      if (!zero) out.emplace_back(x, bound - rem);
      return;
    }
    const std::size_t u = static_cast<std::size_t>(i);
    Rational c = 0;
    for (std::size_t j = u + 1; j < n; ++j) c -= q[u][j] * x[j];
    const Rational lim = rem / q[u][u];
    Int start;
    mpz_fdiv_q(start.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    for (Int v = start;; --v) {
      Rational d = Rational(v) - c;
      if (d * d > lim) break;
      x[u] = v;
      rec(i - 1, rem - q[u][u] * d * d);
    }
    for (Int v = start + 1;; ++v) {
      Rational d = Rational(v) - c;
      if (d * d > lim) break;
      x[u] = v;
      rec(i - 1, rem - q[u][u] * d * d);
    }
    x[u] = 0;
  };
  rec(static_cast<long>(n) - 1, bound);
  return out;
}

QMat dual_basis(const QMat& b) { return transpose(mat_inverse(b)); }

// A ∩ B for full-rank lattices in Q^N.
QMat intersect(const QMat& a, const QMat& b) {
  QMat gens = dual_basis(a);
  for (const auto& r : dual_basis(b)) gens.push_back(r);
  return lattice_basis(dual_basis(lattice_basis(gens)));
}

// Enumerates all k-linear isometries phi (row action) with phi(A) = B.
// The visitor returns false to stop.
void for_each_isometry(const HermitianLattice& A, const HermitianLattice& B,
                       const std::function<bool(const KMatrix&)>& visit) {
  const FieldContext& ctx = A.ctx();
  const int n = A.n();
  // a k-basis of short vectors of A
  Rational top = 0;
  for (const auto& z : A.zgens()) top = std::max(top, re(ctx, A.h(z, z)));
  std::vector<KVec> base;
  std::vector<Rational> base_norm;
  for (Rational bound = 1;; bound *= 2) {
    if (bound > top) bound = top;
    auto vs = vectors_up_to(A, bound);
    std::stable_sort(vs.begin(), vs.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    base.clear();
    base_norm.clear();
    for (const auto& [v, nv] : vs) {
      auto trial = base;
      trial.push_back(v);
      if (k_rank(ctx, trial) == static_cast<int>(trial.size())) {
        base.push_back(v);
        base_norm.push_back(nv);
        if (static_cast<int>(base.size()) == n) break;
      }
    }
    if (static_cast<int>(base.size()) == n || bound == top) break;
  }
  if (static_cast<int>(base.size()) != n) throw Error(ErrorCode::InvalidArgument, "lattice does not span the space");

  std::map<std::string, std::vector<KVec>> by_norm;
  std::vector<const std::vector<KVec>*> cand(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto key = to_string(base_norm[static_cast<std::size_t>(i)]);
    if (!by_norm.count(key)) by_norm[key] = short_vectors(B, base_norm[static_cast<std::size_t>(i)]);
    cand[static_cast<std::size_t>(i)] = &by_norm[key];
  }
  std::vector<std::vector<KElement>> gb(static_cast<std::size_t>(n), std::vector<KElement>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gb[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = A.h(base[static_cast<std::size_t>(i)], base[static_cast<std::size_t>(j)]);
  const KMatrix binv = inverse(ctx, kmat_from_rows(base));
  const std::vector<KVec> zs = A.zgens();

  std::vector<KVec> img(static_cast<std::size_t>(n));
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == n) {
      KMatrix phi = mul(ctx, binv, kmat_from_rows(img));
      std::vector<KVec> images;
      for (const auto& z : zs) {
        KVec w = apply(ctx, z, phi);
        if (!B.contains(w)) return;
        images.push_back(w);
      }
      QMat rows;
      for (const auto& w : images) rows.push_back(HermitianLattice::to_coords(w));
      if (lattice_basis(rows) != B.basis()) return;
      if (!visit(phi)) stop = true;
      return;
    }
    for (const KVec& w : *cand[static_cast<std::size_t>(i)]) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = (B.h(w, img[static_cast<std::size_t>(j)]) == gb[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (!ok) continue;
      img[static_cast<std::size_t>(i)] = w;
      rec(i + 1);
      if (stop) return;
    }
  };
  rec(0);
}

struct PrimeIdeal {
  long ell;
  long rho;  // ideal (ell, omega - rho)
};

PrimeIdeal prime_over(const FieldContext& ctx, long ell) {
  for (long r = 0; r < ell; ++r) {
    long v = floor_mod(r * r - floor_mod(ctx.delta(), ell) * r + ctx.omega_norm(), ell);
    if (v == 0) return {ell, r};
  }
  throw Error(ErrorCode::BadPrime, std::to_string(ell) + " has no prime of degree one");
}

// Value of an integral element of O_k at the residue field O/(ell, omega - rho).
long residue_at(const KElement& x, const PrimeIdeal& P) {
  return floor_mod(reduce_mod(x.a, P.ell) + reduce_mod(x.b, P.ell) * P.rho, P.ell);
}

HermitianLattice ideal_times(const HermitianLattice& l, const KElement& g1, const KElement& g2) {
  std::vector<KVec> gens;
  for (const auto& z : l.zgens()) {
    gens.push_back(scale(l.ctx(), g1, z));
    gens.push_back(scale(l.ctx(), g2, z));
  }
  return HermitianLattice::from_generators(l.ctx(), l.gram(), gens);
}

// {y in L : h(x, y) in P} together with P^{-1} x, where P^{-1} is spanned by 1 and inv_gen.
HermitianLattice exchange(const HermitianLattice& l, const KVec& x, const PrimeIdeal& P, const KElement& inv_gen) {
  const FieldContext& ctx = l.ctx();
  const auto zs = l.zgens();
  std::vector<long> f;
  for (const auto& z : zs) f.push_back(residue_at(l.h(x, z), P));
  std::size_t piv = f.size();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) {
      piv = i;
      break;
    }
  std::vector<KVec> gens;
  if (piv == f.size()) {
    gens = zs;
  } else {
    const long finv = mod_inverse(f[piv], P.ell);
    gens.push_back(scale(ctx, {P.ell, 0}, zs[piv]));
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (i == piv) continue;
      long c = floor_mod(f[i] * finv, P.ell);
      KVec v = zs[i];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - ctx.mul(KElement{c, 0}, zs[piv][j]);
      gens.push_back(v);
    }
  }
  gens.push_back(x);
  gens.push_back(scale(ctx, inv_gen, x));
  return HermitianLattice::from_generators(ctx, l.gram(), gens);
}

// Calls visit on sum c_i b_i for c in [0, q)^N in lexicographic order.
void for_each_residue(const QMat& basis, long q, const std::function<bool(const QVec&, const std::vector<long>&)>& visit) {
  const std::size_t N = basis.size();
  std::vector<long> c(N, 0);
  for (;;) {
    QVec v(N, 0);
    for (std::size_t i = 0; i < N; ++i)
      if (c[i])
        for (std::size_t j = 0; j < N; ++j) v[j] += basis[i][j] * c[i];
    if (!visit(v, c)) return;
    std::size_t i = N;
    while (i > 0) {
      --i;
      if (++c[i] < q) break;
      c[i] = 0;
      if (i == 0) return;
    }
  }
}

bool integral_lattice(const HermitianLattice& l) {
  const auto zs = l.zgens();
  for (const auto& a : zs)
    for (const auto& b : zs) {
      KElement v = l.h(a, b);
      if (!is_integral(v.a) || !is_integral(v.b)) return false;
    }
  return true;
}

}  // namespace

HermitianLattice HermitianLattice::from_generators(const FieldContext& ctx, KMatrix gram, const std::vector<KVec>& gens) {
  QMat rows;
  const KElement w{0, 1};
  for (const auto& g : gens) {
    rows.push_back(to_coords(g));
    rows.push_back(to_coords(scale(ctx, w, g)));
  }
  return from_basis(ctx, std::move(gram), rows);
}

HermitianLattice HermitianLattice::from_basis(const FieldContext& ctx, KMatrix gram, const QMat& rows) {
  HermitianLattice l;
  l.ctx_ = ctx;
  l.basis_ = lattice_basis(rows);
  if (static_cast<int>(l.basis_.size()) != 2 * gram.rows)
    throw Error(ErrorCode::InvalidArgument, "generators do not span a full lattice");
  l.gram_ = std::move(gram);
  l.inverse_ = mat_inverse(l.basis_);
  return l;
}

std::vector<KVec> HermitianLattice::zgens() const {
  std::vector<KVec> out;
  for (const auto& r : basis_) out.push_back(to_kvec(r));
  return out;
}

KVec HermitianLattice::to_kvec(const QVec& c) const {
  KVec x(static_cast<std::size_t>(n()));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = {c[2 * i], c[2 * i + 1]};
  return x;
}

QVec HermitianLattice::to_coords(const KVec& x) {
  QVec c;
  for (const auto& v : x) {
    c.push_back(v.a);
    c.push_back(v.b);
  }
  return c;
}

bool HermitianLattice::contains(const KVec& x) const { return integral_coords(to_coords(x), inverse_).has_value(); }

bool HermitianLattice::contains(const HermitianLattice& other) const {
  for (const auto& r : other.basis_)
    if (!integral_coords(r, inverse_)) return false;
  return true;
}

QMat HermitianLattice::trace_gram() const {
  const auto zs = zgens();
  QMat g(zs.size(), QVec(zs.size()));
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = 0; j < zs.size(); ++j) g[i][j] = re(ctx_, h(zs[i], zs[j]));
  return g;
}

std::string HermitianLattice::key() const {
  std::string s;
  for (const auto& r : basis_)
    for (const auto& x : r) s += to_string(x) + ",";
  return s;
}

KVec apply(const FieldContext& ctx, const KVec& x, const KMatrix& phi) {
  KVec out(static_cast<std::size_t>(phi.cols));
  for (int j = 0; j < phi.cols; ++j)
    for (int i = 0; i < phi.rows; ++i)
      if (!x[static_cast<std::size_t>(i)].is_zero()) out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)] + ctx.mul(x[static_cast<std::size_t>(i)], phi(i, j));
  return out;
}

KVec scale(const FieldContext& ctx, const KElement& c, const KVec& x) {
  KVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = ctx.mul(c, x[i]);
  return out;
}

HermitianLattice standard_lattice(const FieldContext& ctx, const HermitianMatrix& t) {
  if (det_class(ctx, t) == 0) throw Error(ErrorCode::SingularMatrix, "det(T) = 0");
  const int n = t.size();
  std::vector<KVec> gens;
  for (int i = 0; i < n; ++i) {
    KVec e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = {1, 0};
    gens.push_back(e);
  }
  return HermitianLattice::from_generators(ctx, t.to_k(), gens);
}

HermitianLattice dual_lattice(const HermitianLattice& l) {
  const FieldContext& ctx = l.ctx();
  const int n = l.n();
  if (determinant(ctx, l.gram()).is_zero()) throw Error(ErrorCode::SingularMatrix, "degenerate form");
  const auto zs = l.zgens();
  // columns: coordinates of h(u_r, z_j) as functions of r
  QMat cols(2 * zs.size(), QVec(static_cast<std::size_t>(2 * n)));
  for (int r = 0; r < 2 * n; ++r) {
    KVec u(static_cast<std::size_t>(n));
    u[static_cast<std::size_t>(r / 2)] = (r % 2 == 0) ? KElement{1, 0} : KElement{0, 1};
    for (std::size_t j = 0; j < zs.size(); ++j) {
      KElement v = l.h(u, zs[j]);
      cols[2 * j][static_cast<std::size_t>(r)] = v.a;
      cols[2 * j + 1][static_cast<std::size_t>(r)] = v.b;
    }
  }
  return HermitianLattice::from_basis(ctx, l.gram(), dual_basis(lattice_basis(cols)));
}

std::string to_string(SelfDualStatus::Kind k) {
  switch (k) {
    case SelfDualStatus::Kind::selfdual: return "selfdual";
    case SelfDualStatus::Kind::nearly: return "nearly";
    default: return "other";
  }
}

SelfDualStatus selfdual_status(const HermitianLattice& l) {
  SelfDualStatus out;
  HermitianLattice d = dual_lattice(l);
  if (!d.contains(l)) return out;
  for (const Int& e : relative_divisors(l.basis(), d.basis()))
    if (e > 1) out.quotient_shape.push_back(e);
  if (out.quotient_shape.empty()) {
    out.kind = SelfDualStatus::Kind::selfdual;
    return out;
  }
  if (out.quotient_shape.size() != 2 || out.quotient_shape[0] != out.quotient_shape[1] ||
      !out.quotient_shape[0].fits_slong_p() || !is_prime(out.quotient_shape[0].get_si()))
    return out;
  const long p = out.quotient_shape[0].get_si();
  bool cyclic = l.ctx().splitting(p) == SplitType::inert;
  if (!cyclic) {
    for_each_residue(d.basis(), p, [&](const QVec& v, const std::vector<long>&) {
      KVec x = d.to_kvec(v);
      std::vector<KVec> gens = l.zgens();
      gens.push_back(x);
      if (HermitianLattice::from_generators(l.ctx(), l.gram(), gens) == d) cyclic = true;
      return !cyclic;
    });
  }
  if (cyclic) {
    out.kind = SelfDualStatus::Kind::nearly;
    out.p = p;
  }
  return out;
}

std::vector<std::pair<KVec, Rational>> vectors_up_to(const HermitianLattice& l, const Rational& bound) {
  require_positive(l);
  std::vector<std::pair<KVec, Rational>> out;
  if (bound <= 0) return out;
  for (auto& [c, nv] : fincke_pohst(l.trace_gram(), bound)) {
    QVec q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) q[i] = c[i];
    out.emplace_back(l.to_kvec(vec_mul(q, l.basis())), nv);
  }
  return out;
}

std::vector<KVec> short_vectors(const HermitianLattice& l, const Rational& t) {
  std::vector<KVec> out;
  for (auto& [v, nv] : vectors_up_to(l, t))
    if (nv == t) out.push_back(std::move(v));
  return out;
}

AutGroup aut_group(const HermitianLattice& l) {
  require_positive(l);
  const FieldContext& ctx = l.ctx();
  std::vector<KMatrix> elems;
  for_each_isometry(l, l, [&](const KMatrix& phi) {
    elems.push_back(phi);
    return true;
  });
  AutGroup out;
  out.order = static_cast<long>(elems.size());
  std::set<std::string> closure{kmatrix_key(KMatrix::identity(l.n()))};
  std::vector<KMatrix> members{KMatrix::identity(l.n())};
  for (const auto& g : elems) {
    if (closure.count(kmatrix_key(g))) continue;
    out.generators.push_back(g);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& s : out.generators) {
        KMatrix m = mul(ctx, members[i], s);
        if (closure.insert(kmatrix_key(m)).second) members.push_back(m);
      }
  }
  return out;
}

IsometryResult isometric(const HermitianLattice& a, const HermitianLattice& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::RankMismatch, "lattices have different rank");
  require_positive(a);
  require_positive(b);
  IsometryResult out;
  if (mat_det(a.trace_gram()) != mat_det(b.trace_gram())) return out;
  for_each_isometry(a, b, [&](const KMatrix& phi) {
    out.isometric = true;
    out.witness = phi;
    return false;
  });
  return out;
}

std::vector<HermitianLattice> neighbors(const HermitianLattice& l, long ell) {
  const FieldContext& ctx = l.ctx();
  if (!is_prime(ell) || ctx.splitting(ell) != SplitType::split)
    throw Error(ErrorCode::BadPrime, std::to_string(ell) + " is not a split prime");
  if (ell == 2) throw Error(ErrorCode::BadPrime, "ell must be odd");
  const auto zs = l.zgens();
  for (const auto& a : zs)
    for (const auto& b : zs) {
      KElement v = l.h(a, b);
      if (!q_integral(v.a, ell) || !q_integral(v.b, ell)) throw Error(ErrorCode::BadPrime, "L is not integral at ell");
    }
  Rational disc = mat_det(l.trace_gram());
  if (!q_integral(disc, ell) || !q_integral(1 / disc, ell)) throw Error(ErrorCode::BadPrime, "L is not unimodular at ell");

  const PrimeIdeal P = prime_over(ctx, ell);
  const KElement pi{-P.rho, 1};                           // omega - rho
  const KElement pibar = ctx.conj(pi);
  HermitianLattice pl = ideal_times(l, {ell, 0}, pi);
  HermitianLattice pbl = ideal_times(l, {ell, 0}, pibar);
  const KElement inv_gen = ctx.mul(pibar, KElement{Rational(1, ell), 0});  // P^{-1} = O + (pibar / ell) O

  std::vector<HermitianLattice> out;
  std::set<std::string> seen;
  for_each_residue(l.basis(), ell, [&](const QVec& v, const std::vector<long>& c) {
    auto first = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
    if (first == c.end() || *first != 1) return true;
    KVec x = l.to_kvec(v);
    KElement q = l.h(x, x);
    if (reduce_mod(q.a, ell) != 0) return true;
    if (pl.contains(x) || pbl.contains(x)) return true;
    HermitianLattice nb = exchange(l, x, P, inv_gen);
    if (seen.insert(nb.key()).second) out.push_back(std::move(nb));
    return true;
  });
  return out;
}

std::vector<long> default_aux_primes(const HermitianLattice& l, int count) {
  const FieldContext& ctx = l.ctx();
  Rational disc = mat_det(l.trace_gram());
  std::vector<long> out;
  const auto zs = l.zgens();
  for (long ell = 3; static_cast<int>(out.size()) < count; ell += 2) {
    if (!is_prime(ell) || ctx.splitting(ell) != SplitType::split) continue;
    if (!q_integral(disc, ell) || !q_integral(1 / disc, ell)) continue;
    bool ok = true;
    for (const auto& a : zs)
      for (const auto& b : zs) {
        KElement v = l.h(a, b);
        if (!q_integral(v.a, ell) || !q_integral(v.b, ell)) ok = false;
      }
    if (ok) out.push_back(ell);
  }
  return out;
}

GenusRecord genus_enumerate(const HermitianLattice& l, std::vector<long> aux_primes, int class_cap) {
  require_positive(l);
  if (aux_primes.empty()) aux_primes = default_aux_primes(l);
  // isometry invariant: the number of vectors of each norm up to a fixed bound
  Rational top = 0;
  for (const auto& z : l.zgens()) top = std::max(top, re(l.ctx(), l.h(z, z)));
  auto theta = [&](const HermitianLattice& x) {
    std::map<Rational, long> t;
    for (auto& [v, nv] : vectors_up_to(x, top)) ++t[nv];
    return t;
  };
  GenusRecord g;
  std::vector<std::map<Rational, long>> thetas;
  std::set<std::string> seen{l.key()};
  g.classes.push_back(l);
  g.aut_orders.push_back(aut_group(l).order);
  thetas.push_back(theta(l));
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    for (long ell : aux_primes)
      for (auto& nb : neighbors(g.classes[i], ell)) {
        if (!seen.insert(nb.key()).second) continue;
        auto th = theta(nb);
        bool known = false;
        for (std::size_t j = 0; j < g.classes.size() && !known; ++j)
          if (thetas[j] == th && isometric(g.classes[j], nb).isometric) known = true;
        if (known) continue;
        if (static_cast<int>(g.classes.size()) >= class_cap)
          throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(class_cap) + " classes");
        g.aut_orders.push_back(aut_group(nb).order);
        g.classes.push_back(std::move(nb));
        thetas.push_back(std::move(th));
      }
  g.mass = 0;
  for (long a : g.aut_orders) g.mass += Rational(1, a);
  return g;
}

Int rep_count(const HermitianMatrix& target, const HermitianLattice& l) {
  require_positive(l);
  const FieldContext& ctx = l.ctx();
  const int m = target.size();
  if (m > l.n()) throw Error(ErrorCode::RankMismatch, "target is larger than the lattice rank");
  if (signature(ctx, target.to_k()).second != 0) throw Error(ErrorCode::IndefiniteForm, "target must be positive definite");
  std::vector<std::vector<KVec>> cand(static_cast<std::size_t>(m));
  std::map<Int, std::vector<KVec>> cache;
  for (int i = 0; i < m; ++i) {
    const Int& t = target(i, i).a;
    if (!cache.count(t)) cache[t] = short_vectors(l, Rational(t));
    cand[static_cast<std::size_t>(i)] = cache[t];
  }
  std::vector<const KVec*> chosen(static_cast<std::size_t>(m));
  Int count = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      ++count;
      return;
    }
    for (const KVec& x : cand[static_cast<std::size_t>(i)]) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = (l.h(*chosen[static_cast<std::size_t>(j)], x) == to_k(target(j, i)));
      if (!ok) continue;
      chosen[static_cast<std::size_t>(i)] = &x;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

Rational r_gen(const HermitianMatrix& target, const GenusRecord& g) {
  Rational sum = 0;
  for (std::size_t j = 0; j < g.classes.size(); ++j) sum += Rational(rep_count(target, g.classes[j])) / g.aut_orders[j];
  return sum;
}

HermitianLattice nearly_selfdual_in(const FieldContext& ctx, const HermitianMatrix& t, long p) {
  if (signature(ctx, t.to_k()).second != 0) throw Error(ErrorCode::IndefiniteForm, "T must be positive definite");
  if (p == 2 || !is_prime(p) || ctx.splitting(p) != SplitType::inert)
    throw Error(ErrorCode::UnsupportedLocale, "p must be an odd inert prime");
  const Int d = det_class(ctx, t);
  if (ctx.hilbert_chi(Rational(d), p) == 1) throw Error(ErrorCode::Infeasible, "inv_p(V_T) = +1");
  HermitianLattice l = standard_lattice(ctx, t);
  for (;;) {
    HermitianLattice dual = dual_lattice(l);
    Int order = 1;
    for (const Int& e : relative_divisors(l.basis(), dual.basis())) order *= e;
    long worst = 0;
    int worst_defect = 0;
    for (long q : prime_divisors(order)) {
      int defect = valuation(order, q) - (q == p ? 4 : 0);
      if (defect > worst_defect) {
        worst_defect = defect;
        worst = q;
      }
    }
    if (worst == 0) {
      if (selfdual_status(l).kind != SelfDualStatus::Kind::nearly) throw Error(ErrorCode::Infeasible, "no nearly self-dual lattice");
      return l;
    }
    if (worst == 2 || ctx.splitting(worst) == SplitType::ramified)
      throw Error(ErrorCode::UnsupportedLocale, "nontrivial defect at " + std::to_string(worst));
    QMat scaled = l.basis();
    for (auto& row : scaled)
      for (auto& x : row) x /= worst;
    QMat torsion = intersect(dual.basis(), scaled);
    std::optional<KVec> pick;
    for_each_residue(torsion, worst, [&](const QVec& v, const std::vector<long>&) {
      KVec x = l.to_kvec(v);
      if (l.contains(x)) return true;
      KElement hx = l.h(x, x);
      if (!is_integral(hx.a)) return true;
      pick = x;
      return false;
    });
    if (!pick) throw Error(ErrorCode::Infeasible, "no integral overlattice at " + std::to_string(worst));
    auto gens = l.zgens();
    gens.push_back(*pick);
    l = HermitianLattice::from_generators(ctx, l.gram(), gens);
  }
}

LatticeType lattice_type_at_2(const HermitianLattice& l) {
  const FieldContext& ctx = l.ctx();
  if (ctx.splitting(2) != SplitType::ramified) throw Error(ErrorCode::NotRamifiedAt2, "2 is not ramified in k");
  const auto zs = l.zgens();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (two_adic_valuation(l.h(zs[i], zs[i]).a) < 1) return LatticeType::I;
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      if (two_adic_valuation(ctx.trace(l.h(zs[i], zs[j]))) < 1) return LatticeType::I;
  }
  return LatticeType::II;
}

HermitianLattice opposite_type_at_2(const HermitianLattice& l) {
  const FieldContext& ctx = l.ctx();
  if (ctx.splitting(2) != SplitType::ramified) throw Error(ErrorCode::NotRamifiedAt2, "2 is not ramified in k");
  if (!integral_lattice(l)) throw Error(ErrorCode::UnsupportedCase, "L must be integral");
  const LatticeType want = lattice_type_at_2(l) == LatticeType::I ? LatticeType::II : LatticeType::I;
  const PrimeIdeal P = prime_over(ctx, 2);
  const KElement pi{-P.rho, 1};
  HermitianLattice pl = ideal_times(l, {2, 0}, pi);
  const KElement inv_gen = ctx.mul(ctx.conj(pi), KElement{Rational(1, 2), 0});
  auto shape = [](const HermitianLattice& x) {
    std::vector<Int> s;
    for (const Int& e : relative_divisors(x.basis(), dual_lattice(x).basis()))
      if (e > 1) s.push_back(e);
    return s;
  };
  const auto target_shape = shape(l);
  std::optional<HermitianLattice> found;
  for_each_residue(l.basis(), 4, [&](const QVec& v, const std::vector<long>&) {
    KVec x = l.to_kvec(v);
    if (pl.contains(x)) return true;
    if (two_adic_valuation(l.h(x, x).a) < 1) return true;
    HermitianLattice m = exchange(l, x, P, inv_gen);
    if (!integral_lattice(m) || lattice_type_at_2(m) != want || shape(m) != target_shape) return true;
    found = std::move(m);
    return false;
  });
  if (!found) throw Error(ErrorCode::UnsupportedCase, "no lattice of the other type at 2 was found");
  return *found;
}

int selfdual_orbits_at_2(const FieldContext& ctx, const HermitianMatrix& t) {
  const int n = t.size();
  if (ctx.splitting(2) != SplitType::ramified || n % 2 == 1) return 1;
  Rational d = det_class(ctx, t);
  if ((n / 2) % 2 == 1) d = -d;
  if (ctx.hilbert_chi(d, 2) == 1) return 2;  // split space
  return valuation(Int(ctx.delta()), 2) == 3 ? 2 : 1;
}

}  // namespace uc
