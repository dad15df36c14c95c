#include "uc/eisenstein.hpp"

#include "uc/error.hpp"

namespace uc {

namespace {

void require_unramified_odd(const FieldContext& ctx, long p) {
  if (p == 2 || !is_prime(p) || ctx.delta() % p == 0)
    throw Error(ErrorCode::UnsupportedLocale, "need an odd prime not dividing delta, got " + std::to_string(p));
}

void require_positive(const FieldContext& ctx, const HermitianMatrix& t) {
  if (det_class(ctx, t) == 0) throw Error(ErrorCode::SingularMatrix, "det(T) = 0");
  if (signature(ctx, t.to_k()).second != 0) throw Error(ErrorCode::IndefiniteForm, "T must be positive definite");
}

}  // namespace

int gamma_unit(const FieldContext& ctx, const SpaceInvariants& v, long p) {
  require_unramified_odd(ctx, p);
  return hilbert_symbol(Rational(ctx.delta()), v.det_class, p);
}

Rational l_factor_inv(int n, long p) {
  Rational out = 1;
  for (int i = 1; i <= n; ++i) {
    const Rational term = rpow(p, -i);
    out *= (i % 2 == 0) ? Rational(1 - term) : Rational(1 + term);
  }
  return out;
}

WhittakerValue whittaker0(const FieldContext& ctx, const HermitianMatrix& t, const HermitianMatrix& s, long p,
                          const CountOptions& opt) {
  require_unramified_odd(ctx, p);
  const int n = t.size();
  WhittakerValue w;
  const int g = gamma_unit(ctx, space_invariants(ctx, s), p);
  w.gamma_power = (n % 2 == 0) ? 1 : g;
  const int v = valuation(det_class(ctx, s), p);
  w.rational_part = rpow(p, -v * n) * alpha(ctx, s, t, p, opt).value;
  return w;
}

WhittakerValue whittaker_prime(const FieldContext& ctx, const HermitianMatrix& t, long p) {
  require_unramified_odd(ctx, p);
  auto rep = nondegeneracy_report(ctx, t, p);
  if (!rep.nondeg) throw Error(ErrorCode::NotNondegenerate, "T is not nondegenerate at " + std::to_string(p));
  const int n = t.size();
  WhittakerValue w;
  const int g = gamma_unit(ctx, space_invariants(ctx, HermitianMatrix::identity(n)), p);
  w.gamma_power = (n % 2 == 0) ? 1 : g;
  w.rational_part = alpha_selfdual(n, p) * mu(*rep.a, *rep.b, p);
  w.log_p_power = 1;
  return w;
}

Rational volume_ratio(int n, long p) {
  const Rational sign = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
  return rpow(p, -n) * (1 - sign * rpow(p, -n - 1)) / (1 - rpow(p, -2));
}

std::string to_string(CoefficientStatus s) {
  switch (s) {
    case CoefficientStatus::vanishes_identically: return "vanishes_identically";
    case CoefficientStatus::ramified_support: return "ramified_support";
    default: return "inert_case";
  }
}

FourierCoefficientReport coefficient_report(const FieldContext& ctx, const HermitianMatrix& t) {
  require_positive(ctx, t);
  FourierCoefficientReport r;
  r.t = t;
  r.diff = diff_sets(ctx, t);
  if (r.diff.diff0.size() >= 2) {
    r.status = CoefficientStatus::vanishes_identically;
    return r;
  }
  if (r.diff.diff0.empty()) {
    r.status = CoefficientStatus::ramified_support;
    return r;
  }
  const long p = r.diff.diff0.front();
  if (p == 2) throw Error(ErrorCode::UnsupportedLocale, "the inert prime is 2");
  auto nd = nondegeneracy_report(ctx, t, p);
  if (!nd.nondeg)
    throw Error(ErrorCode::DegenerateT,
                "T is degenerate at " + std::to_string(p) + "; predicted dimension " + std::to_string(nd.predicted_dim));
  r.status = CoefficientStatus::inert_case;
  r.p = p;
  r.mu = mu(*nd.a, *nd.b, p);

  std::vector<HermitianLattice> reps{nearly_selfdual_in(ctx, t, p)};
  if (selfdual_orbits_at_2(ctx, t) == 2) reps.push_back(opposite_type_at_2(reps.front()));
  Rational total = 0;
  for (const auto& l : reps) {
    GenusRecord g = genus_enumerate(l);
    GenusSummary s;
    if (ctx.splitting(2) == SplitType::ramified) s.type_at_2 = lattice_type_at_2(l);
    s.classes = g.classes.size();
    s.mass = g.mass;
    s.r_gen = r_gen(t, g);
    total += s.r_gen;
    r.genera.push_back(s);
  }
  r.r_gen_lprime = r.genera.front().r_gen;
  r.normalized_coefficient = r.mu * r.r_gen_lprime;
  r.arithmetic_degree = r.mu * Rational(ctx.class_number(), ctx.unit_count()) * total;
  return r;
}

}  // namespace uc
