#include "uc/density.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include "uc/error.hpp"
#include "uc/residue.hpp"

namespace uc {

namespace {

void require_inert_odd(const FieldContext& ctx, long p) {
  if (p < 3 || !is_prime(p) || ctx.splitting(p) != SplitType::inert)
    throw Error(ErrorCode::UnsupportedLocale, "density kernels need an odd prime inert in k, got " + std::to_string(p));
}

int max_exponent(const std::vector<int>& e) { return e.empty() ? 0 : *std::max_element(e.begin(), e.end()); }

// Hermitian classes mod p^k of size n are multisets of exponents in [0, k].
class ClassTable {
 public:
  ClassTable(int n, int k) : n_(n), k_(k) {
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    build(cur, 0, 0);
  }
  int size() const { return static_cast<int>(classes_.size()); }
  const std::vector<int>& exponents(int idx) const { return classes_[static_cast<std::size_t>(idx)]; }
  int index_sorted(const int* e) const {
    std::int64_t key = 0;
    for (int i = 0; i < n_; ++i) key = key * (k_ + 1) + e[i];
    return index_.at(key);
  }
  int zero_class() const { return size() - 1; }

 private:
  void build(std::vector<int>& cur, int pos, int lo) {
    if (pos == n_) {
      std::int64_t key = 0;
      for (int e : cur) key = key * (k_ + 1) + e;
      index_[key] = size();
      classes_.push_back(cur);
      return;
    }
    for (int e = lo; e <= k_; ++e) {
      cur[static_cast<std::size_t>(pos)] = e;
      build(cur, pos + 1, e);
    }
  }
  int n_, k_;
  std::vector<std::vector<int>> classes_;
  std::map<std::int64_t, int> index_;
};

struct Rep {
  Res x;
  std::uint64_t weight;
};

// For each c in [1, k], units u_t mod p^c realizing every unit norm t mod p^c.
std::vector<std::vector<Res>> norm_representatives(const ResidueRing& R) {
  const int k = R.k();
  std::vector<std::vector<Res>> out(static_cast<std::size_t>(k) + 1);
  for (int c = 1; c <= k; ++c) {
    const std::int64_t pc = R.pow_p(c);
    const std::int64_t need = (R.p() - 1) * R.pow_p(c - 1);
    std::map<std::int64_t, Res> seen;
    for (std::int64_t span = 0; static_cast<std::int64_t>(seen.size()) < need; ++span)
      for (std::int64_t a = 0; a <= span; ++a) {
        std::int64_t b = span - a;
        if (a >= pc || b >= pc) continue;
        Res u{a, b};
        std::int64_t nm = R.norm(u) % pc;
        if (nm % R.p() == 0) continue;
        seen.emplace(nm, u);
      }
    for (auto& [t, u] : seen) out[static_cast<std::size_t>(c)].push_back(u);
  }
  return out;
}

// Orbit representatives of one coordinate of a row vector, under the
// diagonal stabilizer of P at an entry p^e.
std::vector<Rep> coordinate_reps(const ResidueRing& R, const std::vector<std::vector<Res>>& nreps, int e) {
  const int k = R.k();
  const std::uint64_t p = static_cast<std::uint64_t>(R.p());
  std::vector<Rep> out;
  out.push_back({{0, 0}, 1});
  for (int v = 0; v < k; ++v) {
    const int c = (e == k) ? 0 : std::min(k - e, k - v);
    std::uint64_t shell = (p * p - 1);
    for (int i = 0; i < 2 * (k - v - 1); ++i) shell *= p;
    const std::int64_t pv = R.pow_p(v);
    if (c == 0) {
      out.push_back({{pv, 0}, shell});
      continue;
    }
    const auto& us = nreps[static_cast<std::size_t>(c)];
    const std::uint64_t w = shell / us.size();
    for (const Res& u : us) out.push_back({R.scale(u, pv), w});
  }
  return out;
}

using Transition = std::vector<std::vector<std::uint64_t>>;

Transition build_transition(const ResidueRing& R, const ClassTable& cls, int n, int f) {
  const int k = R.k();
  const auto nreps = norm_representatives(R);
  const std::int64_t pf = R.pow_p(f);
  Transition M(static_cast<std::size_t>(cls.size()), std::vector<std::uint64_t>(static_cast<std::size_t>(cls.size()), 0));
  for (int ci = 0; ci < cls.size(); ++ci) {
    const std::vector<int>& e = cls.exponents(ci);
    std::vector<std::vector<Rep>> reps;
    for (int j = 0; j < n; ++j) reps.push_back(coordinate_reps(R, nreps, e[static_cast<std::size_t>(j)]));
    Res r[kMaxResidueDim];
    Res h[kMaxResidueDim * kMaxResidueDim];
    int out[kMaxResidueDim];
    auto& row = M[static_cast<std::size_t>(ci)];
    auto rec = [&](auto&& self, int j, std::uint64_t w) -> void {
      if (j == n) {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Res d = R.scale(R.mul(r[a], R.conj(r[b])), pf);
            Res base{a == b ? (e[static_cast<std::size_t>(a)] == k ? 0 : R.pow_p(e[static_cast<std::size_t>(a)])) : 0, 0};
            h[a * n + b] = R.sub(base, d);
          }
        jordan_exponents(R, h, n, out);
        row[static_cast<std::size_t>(cls.index_sorted(out))] += w;
        return;
      }
      for (const Rep& rep : reps[static_cast<std::size_t>(j)]) {
        r[j] = rep.x;
        self(self, j + 1, w * rep.weight);
      }
    };
    rec(rec, 0, 1);
  }
  return M;
}

struct TransitionKey {
  long delta, p;
  int k, n, f;
  auto tie() const { return std::tie(delta, p, k, n, f); }
  friend bool operator<(const TransitionKey& x, const TransitionKey& y) { return x.tie() < y.tie(); }
};

const Transition& cached_transition(const FieldContext& ctx, const ResidueRing& R, const ClassTable& cls, int n,
                                    int f) {
  static std::mutex mu;
  static std::map<TransitionKey, Transition> cache;
  TransitionKey key{ctx.delta(), R.p(), R.k(), n, f};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Transition M = build_transition(R, cls, n, f);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(M)).first->second;
}

Int count_orbit(const FieldContext& ctx, const std::vector<int>& s_exp, const std::vector<int>& t_exp, long p, int k,
                int n) {
  if (n > kMaxResidueDim) throw Error(ErrorCode::BadSize, "T too large for the residue kernel");
  // weights are bounded by p^{2kn}
  Int bound = ipow(p, static_cast<unsigned>(2 * k * n));
  if (bound >= Int(1) << 63) throw Error(ErrorCode::Overflow, "orbit weights exceed 64 bits at this level");
  ResidueRing R(ctx, p, k);
  ClassTable cls(n, k);
  std::vector<Int> F(static_cast<std::size_t>(cls.size()), 0);
  F[static_cast<std::size_t>(cls.zero_class())] = 1;
  for (int f : s_exp) {
    if (f >= k) {
      for (auto& x : F) x *= bound;
      continue;
    }
    const Transition& M = cached_transition(ctx, R, cls, n, f);
    std::vector<Int> G(F.size(), 0);
    for (std::size_t c = 0; c < F.size(); ++c)
      for (std::size_t d = 0; d < F.size(); ++d)
        if (M[c][d] != 0 && F[d] != 0) {
          Int w;
          mpz_set_ui(w.get_mpz_t(), M[c][d]);
          G[c] += w * F[d];
        }
    F = std::move(G);
  }
  std::vector<int> tk(t_exp);
  for (int& e : tk) e = std::min(e, k);
  std::sort(tk.begin(), tk.end());
  return F[static_cast<std::size_t>(cls.index_sorted(tk.data()))];
}

Int count_enumerate(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p, int k,
                    const CountOptions& opt) {
  ResidueRing R(ctx, p, k);
  const int m = s.size(), n = t.size();
  const std::int64_t q = R.modulus();
  std::int64_t total = 1;
  for (int i = 0; i < 2 * m; ++i) {
    total *= q;
    if (total > 50'000'000) throw Error(ErrorCode::Overflow, "column space too large for enumeration");
  }
  std::vector<Res> S(static_cast<std::size_t>(m) * m), T(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < S.size(); ++i) S[i] = R.reduce(s.entries()[i]);
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = R.reduce(t.entries()[i]);

  // every column with its row vector c^t S
  struct Col {
    std::vector<Res> c, cs;
  };
  std::vector<std::vector<Col>> cand(static_cast<std::size_t>(n));
  std::vector<Res> c(static_cast<std::size_t>(m));
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t x = idx;
    for (int i = 0; i < m; ++i) {
      c[static_cast<std::size_t>(i)].a = x % q;
      x /= q;
      c[static_cast<std::size_t>(i)].b = x % q;
      x /= q;
    }
    std::vector<Res> cs(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b)
      for (int a = 0; a < m; ++a)
        cs[static_cast<std::size_t>(b)] =
            R.add(cs[static_cast<std::size_t>(b)], R.mul(c[static_cast<std::size_t>(a)], S[static_cast<std::size_t>(a * m + b)]));
    Res self{0, 0};
    for (int b = 0; b < m; ++b)
      self = R.add(self, R.mul(cs[static_cast<std::size_t>(b)], R.conj(c[static_cast<std::size_t>(b)])));
    for (int j = 0; j < n; ++j)
      if (self == T[static_cast<std::size_t>(j * n + j)]) cand[static_cast<std::size_t>(j)].push_back({c, cs});
  }

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> over{false};
  auto search = [&](unsigned part, unsigned parts) -> Int {
    std::vector<const Col*> chosen(static_cast<std::size_t>(n));
    Int local = 0;
    auto rec = [&](auto&& self, int j) -> void {
      if (over.load(std::memory_order_relaxed)) return;
      if (j == n) {
        ++local;
        return;
      }
      const auto& list = cand[static_cast<std::size_t>(j)];
      for (std::size_t ci = 0; ci < list.size(); ++ci) {
        if (j == 0 && ci % parts != part) continue;
        if (nodes.fetch_add(1, std::memory_order_relaxed) >= opt.node_budget) {
          over = true;
          return;
        }
        const Col& col = list[ci];
        bool ok = true;
        for (int i = 0; i < j && ok; ++i) {
          Res v{0, 0};
          for (int b = 0; b < m; ++b)
            v = R.add(v, R.mul(chosen[static_cast<std::size_t>(i)]->cs[static_cast<std::size_t>(b)], R.conj(col.c[static_cast<std::size_t>(b)])));
          ok = (v == T[static_cast<std::size_t>(i * n + j)]);
        }
        if (!ok) continue;
        chosen[static_cast<std::size_t>(j)] = &col;
        self(self, j + 1);
      }
    };
    rec(rec, 0);
    return local;
  };

  const unsigned parts = std::max(1u, opt.threads);
  std::vector<Int> partial(parts);
  if (parts == 1) {
    partial[0] = search(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < parts; ++i) pool.emplace_back([&, i] { partial[i] = search(i, parts); });
    for (auto& th : pool) th.join();
  }
  if (over) throw Error(ErrorCode::Overflow, "node budget exhausted");
  Int sum = 0;
  for (auto& x : partial) sum += x;
  return sum;
}

Rational scale_count(const Int& count, long p, int k, int m, int n) {
  return Rational(count) * rpow(p, -k * n * (2 * m - n));
}

}  // namespace

Int brute_A(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p, int k,
            const CountOptions& opt) {
  require_inert_odd(ctx, p);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "level k must be positive");
  if (det_class(ctx, s) == 0 || det_class(ctx, t) == 0) throw Error(ErrorCode::SingularMatrix, "S and T must be nonsingular");
  std::string key;
  if (opt.cache) {
    key = count_key(ctx, s, t, p, k);
    if (auto hit = opt.cache->get(key)) return *hit;
  }
  Int count;
  if (opt.strategy == CountStrategy::enumerate) {
    count = count_enumerate(ctx, s, t, p, k, opt);
  } else {
    auto s_exp = local_jordan_inert(ctx, s, p).exponents;
    auto t_exp = local_jordan_inert(ctx, t, p).exponents;
    count = count_orbit(ctx, s_exp, t_exp, p, k, t.size());
  }
  if (opt.cache) opt.cache->put(key, count);
  return count;
}

std::string count_key(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p, int k) {
  auto mat = [](const HermitianMatrix& m) {
    std::string out = std::to_string(m.size()) + ":";
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) out += m(i, j).a.get_str() + "," + m(i, j).b.get_str() + ";";
    return out;
  };
  return std::to_string(ctx.delta()) + "_" + mat(s) + "_" + mat(t) + "_" + std::to_string(p) + "_" + std::to_string(k);
}

ResidueCount residue_count(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                           int k, const CountOptions& opt) {
  ResidueCount out;
  out.p = p;
  out.k = k;
  out.count = brute_A(ctx, s, t, p, k, opt);
  out.scaled = scale_count(out.count, p, k, s.size(), t.size());
  return out;
}

namespace {

template <class Counter>
AlphaResult stabilize(Counter&& count_at, int k0, int max_k) {
  AlphaResult out;
  try {
    out.levels.push_back(count_at(k0));
    for (int k = k0 + 1; k <= max_k; ++k) {
      out.levels.push_back(count_at(k));
      const ResidueCount& a = out.levels[out.levels.size() - 2];
      const ResidueCount& b = out.levels.back();
      if (a.scaled == b.scaled) {
        out.value = a.scaled;
        out.k_used = a.k;
        out.count = a.count;
        return out;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    throw Error(ErrorCode::NonStabilized, std::string("budget reached before stabilization: ") + e.what());
  }
  throw Error(ErrorCode::NonStabilized, "no agreement up to k = " + std::to_string(max_k));
}

// Density from Jordan exponents alone (orbit strategy).
AlphaResult alpha_from_exponents(const FieldContext& ctx, const std::vector<int>& s_exp, const std::vector<int>& t_exp,
                                 long p, int max_k) {
  const int m = static_cast<int>(s_exp.size()), n = static_cast<int>(t_exp.size());
  auto count_at = [&](int k) {
    ResidueCount rc;
    rc.p = p;
    rc.k = k;
    rc.count = count_orbit(ctx, s_exp, t_exp, p, k, n);
    rc.scaled = scale_count(rc.count, p, k, m, n);
    return rc;
  };
  return stabilize(count_at, max_exponent(t_exp) + 1, max_k);
}

}  // namespace

AlphaResult alpha(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                  const CountOptions& opt, int max_k) {
  require_inert_odd(ctx, p);
  if (det_class(ctx, t) == 0) throw Error(ErrorCode::SingularMatrix, "det(T) = 0");
  if (det_class(ctx, s) == 0) throw Error(ErrorCode::SingularMatrix, "det(S) = 0");
  const auto t_exp = local_jordan_inert(ctx, t, p).exponents;
  if (opt.strategy == CountStrategy::orbit && !opt.cache)
    return alpha_from_exponents(ctx, local_jordan_inert(ctx, s, p).exponents, t_exp, p, max_k);
  auto count_at = [&](int k) { return residue_count(ctx, s, t, p, k, opt); };
  return stabilize(count_at, max_exponent(t_exp) + 1, max_k);
}

Rational mu(int a, int b, long p) {
  if (a < 0 || a >= b || ((a + b) % 2) == 0)
    throw Error(ErrorCode::BadExponents, "need 0 <= a < b with a + b odd");
  Rational sum = 0;
  for (int l = 0; l <= a; ++l) sum += Rational(ipow(p, static_cast<unsigned>(l)) * (a + b + 1 - 2 * l));
  return sum / 2;
}

Rational alpha_selfdual(int n, long p) {
  Rational out = 1;
  for (int i = 1; i <= n; ++i) out *= 1 - (i % 2 ? -1 : 1) * rpow(p, -i);
  return out;
}

Rational alpha_nearly(int n, long p) {
  if (n < 2) throw Error(ErrorCode::BadSize, "n >= 2 required");
  const int sign = ((n + 1) % 2) ? -1 : 1;
  return alpha_selfdual(n, p) * (1 - sign * rpow(p, -(n + 1))) / (1 - rpow(p, -2));
}

Rational alpha_reduction_rhs(int n, long p) {
  if (n < 2) throw Error(ErrorCode::BadSize, "n >= 2 required");
  Rational out = (1 + rpow(p, -1)) * (1 + rpow(p, -3));
  for (int i = 2; i <= n - 1; ++i) out *= 1 - (i % 2 ? -1 : 1) * rpow(p, -i - 2);
  return out;
}

HermitianMatrix hyperbolic_augment(const FieldContext& ctx, const HermitianMatrix& s, int r) {
  const int m = s.size(), N = m + 2 * r;
  std::vector<OkElement> e(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(i) * N + j] = s(i, j);
  for (int h = 0; h < r; ++h) {
    int a = m + 2 * h, b = a + 1;
    e[static_cast<std::size_t>(a) * N + b] = {1, 0};
    e[static_cast<std::size_t>(b) * N + a] = {1, 0};
  }
  return HermitianMatrix::from_entries(ctx, N, std::move(e));
}

Rational DensityPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational DensityPolynomial::derivative_at(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + coeffs[i] * static_cast<long>(i);
  return acc;
}

int DensityPolynomial::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0) return static_cast<int>(i);
  return -1;
}

namespace {

// Coefficients of the interpolating polynomial through (x_i, y_i).
std::vector<Rational> interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const std::size_t n = x.size();
  std::vector<Rational> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> basis{1};
    Rational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, 0);
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * x[j];
      }
      basis = std::move(next);
      denom *= x[i] - x[j];
    }
    for (std::size_t d = 0; d < n; ++d) out[d] += basis[d] * y[i] / denom;
  }
  return out;
}

}  // namespace

DensityPolynomial density_poly(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                               int deg, const CountOptions& opt) {
  if (deg < 0) throw Error(ErrorCode::InvalidArgument, "degree must be non-negative");
  DensityPolynomial out;
  out.p = p;
  std::vector<Rational> xs, ys;
  require_inert_odd(ctx, p);
  std::vector<int> s_exp, t_exp;
  if (opt.strategy == CountStrategy::orbit) {
    s_exp = local_jordan_inert(ctx, s, p).exponents;
    t_exp = local_jordan_inert(ctx, t, p).exponents;
  }
  for (int r = 0; r <= deg + 1; ++r) {
    Rational v;
    if (opt.strategy == CountStrategy::orbit) {
      // a hyperbolic plane is unimodular at an odd inert prime
      std::vector<int> sr(static_cast<std::size_t>(2 * r), 0);
      sr.insert(sr.end(), s_exp.begin(), s_exp.end());
      v = alpha_from_exponents(ctx, sr, t_exp, p, 8).value;
    } else {
      v = alpha(ctx, hyperbolic_augment(ctx, s, r), t, p, opt).value;
    }
    out.support_points.emplace_back(r, v);
    xs.push_back(rpow(-p, -r));
    ys.push_back(v);
  }
  Rational held_x = xs.back(), held_y = ys.back();
  xs.pop_back();
  ys.pop_back();
  out.coeffs = interpolate(xs, ys);
  if (out.evaluate(held_x) != held_y)
    throw Error(ErrorCode::FitMismatch, "held-out point r = " + std::to_string(deg + 1) + " disagrees at degree " +
                                            std::to_string(deg));
  return out;
}

namespace {

DensityPolynomial fit_escalating(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                                 const CountOptions& opt) {
  const int n = t.size();
  for (int deg = n;; ++deg) {
    try {
      return density_poly(ctx, s, t, p, deg, opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FitMismatch || deg >= 2 * (n + max_exponent(local_jordan_inert(ctx, t, p).exponents)) + 2) throw;
    }
  }
}

}  // namespace

Rational derivative_kappa(const CountOptions& opt) {
  static std::mutex guard;
  static std::optional<Rational> kappa;
  std::lock_guard<std::mutex> lock(guard);
  if (!kappa) {
    FieldContext ctx = FieldContext::make(-4);
    DensityPolynomial F = fit_escalating(ctx, HermitianMatrix::identity(1), HermitianMatrix::diagonal({3}), 3, opt);
    Rational d = F.derivative_at(1);
    if (d == 0) throw Error(ErrorCode::FitMismatch, "pinning instance has a vanishing derivative");
    kappa = alpha_selfdual(1, 3) * mu(0, 1, 3) / d;
  }
  return *kappa;
}

Rational alpha_prime(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p,
                     const CountOptions& opt) {
  require_inert_odd(ctx, p);
  auto s_exp = local_jordan_inert(ctx, s, p).exponents;
  if (max_exponent(s_exp) != 0) throw Error(ErrorCode::InvalidArgument, "S must be unimodular at p");
  if (alpha(ctx, s, t, p, opt).value != 0) throw Error(ErrorCode::NotIncoherentLocal, "T is represented by S locally");
  DensityPolynomial F = fit_escalating(ctx, s, t, p, opt);
  return derivative_kappa(opt) * F.derivative_at(1);
}

}  // namespace uc
