#include "uc/residue.hpp"

#include <algorithm>
#include <limits>

#include "uc/error.hpp"

namespace uc {

ResidueRing::ResidueRing(const FieldContext& ctx, long p, int k) : p_(p), k_(k) {
  if (p == 2) throw Error(ErrorCode::EvenPrime, "residue kernels need an odd prime");
  if (ctx.splitting(p) != SplitType::inert)
    throw Error(ErrorCode::UnsupportedLocale, "p = " + std::to_string(p) + " is not inert");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "level k must be positive");
  pow_.push_back(1);
  for (int i = 0; i < k; ++i) {
    if (pow_.back() > (std::int64_t{1} << 30) / p)
      throw Error(ErrorCode::Overflow, "p^k exceeds the residue kernel range");
    pow_.push_back(pow_.back() * p);
  }
  q_ = pow_.back();
  tr_ = red(ctx.omega_trace());
  wn_ = red(ctx.omega_norm());
}

Res ResidueRing::reduce(const OkElement& x) const {
  Int qa = x.a % q_, qb = x.b % q_;
  return {red(qa.get_si()), red(qb.get_si())};
}

std::int64_t ResidueRing::inv_int(std::int64_t u) const { return mod_inverse(static_cast<long>(u), q_); }

void jordan_exponents(const ResidueRing& R, Res* h, int n, int* out) {
  const int k = R.k();
  int idx[kMaxResidueDim];
  int m = n;
  for (int i = 0; i < n; ++i) idx[i] = i;
  int produced = 0;
  auto at = [&](int i, int j) -> Res& { return h[i * n + j]; };

  while (m > 0) {
    // entry of minimal valuation, preferring the diagonal
    int best = k, bi = -1, bj = -1;
    bool diag = false;
    for (int s = 0; s < m; ++s) {
      int i = idx[s];
      int v = R.val(at(i, i).a);
      if (v < best || (v == best && !diag && v < k)) {
        best = v;
        bi = bj = s;
        diag = true;
      }
    }
    for (int s = 0; s < m; ++s)
      for (int t = s + 1; t < m; ++t) {
        int v = R.val(at(idx[s], idx[t]));
        if (v < best) {
          best = v;
          bi = s;
          bj = t;
          diag = false;
        }
      }
    if (best >= k) {
      for (int s = 0; s < m; ++s) out[produced++] = k;
      break;
    }
    int i = idx[bi];
    if (!diag) {
      // e_i <- e_i + c e_j with c in {1, omega}; one of the two traces is a unit times p^best
      int j = idx[bj];
      const Res cands[2] = {{1, 0}, {0, 1}};
      bool done = false;
      for (const Res& c : cands) {
        Res cc = R.conj(c);
        // h(e_i + c e_j, e_i + c e_j) = h_ii + conj(c) h_ij + c h_ji + N(c) h_jj
        Res d = R.add(R.add(at(i, i), R.mul(cc, at(i, j))), R.add(R.mul(c, at(j, i)), R.scale(at(j, j), R.norm(c))));
        if (R.val(d.a) != best) continue;
        for (int t = 0; t < m; ++t) {
          int l = idx[t];
          if (l == i) continue;
          at(i, l) = R.add(at(i, l), R.mul(c, at(j, l)));
          at(l, i) = R.add(at(l, i), R.mul(cc, at(l, j)));
        }
        at(i, i) = d;
        done = true;
        break;
      }
      if (!done) throw Error(ErrorCode::InvalidArgument, "matrix is not hermitian mod p^k");
    }
    // pivot on e_i; h_ii = p^best * u with u a unit
    const std::int64_t pv = R.pow_p(best);
    const std::int64_t u_inv = R.inv_int(at(i, i).a / pv);
    for (int s = 0; s < m; ++s) {
      int l = idx[s];
      if (l == i) continue;
      Res a{at(l, i).a / pv, at(l, i).b / pv};
      Res f = R.scale(a, u_inv);
      for (int t = 0; t < m; ++t) {
        int r = idx[t];
        if (r == i) continue;
        Res b{at(i, r).a / pv, at(i, r).b / pv};
        at(l, r) = R.sub(at(l, r), R.scale(R.mul(f, b), pv));
      }
    }
    out[produced++] = best;
    idx[bi] = idx[m - 1];
    --m;
  }
  std::sort(out, out + n);
}

}  // namespace uc
