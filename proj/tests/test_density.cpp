#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uc/density.hpp"
#include "uc/error.hpp"

using namespace uc;
using testing::D;

namespace {

// Plain enumeration of all x in M_{m,n}(O_k / p^k) with S[x] = T mod p^k.
long naive_count(const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p, int k) {
  const long q = static_cast<long>(ipow(p, static_cast<unsigned>(k)).get_si());
  const int m = s.size(), n = t.size();
  const int cells = m * n;
  std::vector<OkElement> x(static_cast<std::size_t>(cells));
  auto mod = [&](const Int& v) { return Int(((v % q) + q) % q); };
  long count = 0;
  std::vector<long> digits(static_cast<std::size_t>(2 * cells), 0);
  for (;;) {
    for (int c = 0; c < cells; ++c) x[static_cast<std::size_t>(c)] = {digits[static_cast<std::size_t>(2 * c)], digits[static_cast<std::size_t>(2 * c + 1)]};
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        OkElement v{0, 0};
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            v = v + ctx.mul(ctx.mul(x[static_cast<std::size_t>(a * n + i)], s(a, b)), ctx.conj(x[static_cast<std::size_t>(b * n + j)]));
        ok = mod(v.a) == mod(t(i, j).a) && mod(v.b) == mod(t(i, j).b);
      }
    if (ok) ++count;
    std::size_t d = 0;
    while (d < digits.size() && ++digits[d] == q) digits[d++] = 0;
    if (d == digits.size()) break;
  }
  return count;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("brute_A examples") {
  auto k = FieldContext::make(-4);
  CHECK(brute_A(k, D({1}), D({1}), 3, 1) == 4);
  CHECK(brute_A(k, D({1}), D({1}), 3, 2) == 12);
  CHECK(brute_A(k, D({1}), D({3}), 3, 1) == 1);
  CHECK(code_of([&] { brute_A(k, D({1}), D({1}), 5, 1); }) == ErrorCode::UnsupportedLocale);
}

TEST_CASE("both strategies agree with plain enumeration") {
  auto k = FieldContext::make(-4);
  CountOptions en;
  en.strategy = CountStrategy::enumerate;
  struct Case {
    HermitianMatrix s, t;
    int level;
  };
  std::vector<Case> cases{{D({1}), D({1}), 1}, {D({1}), D({1}), 2}, {D({1}), D({3}), 2}, {D({3}), D({3}), 2},
                          {D({1, 1}), D({1}), 1}, {D({1, 1}), D({1}), 2}, {D({1, 3}), D({3}), 2},
                          {D({1, 1}), D({1, 1}), 1}, {D({1, 3}), D({1, 3}), 1}, {D({1, 1}), D({1, 3}), 1}};
  for (const auto& c : cases) {
    long oracle = naive_count(k, c.s, c.t, 3, c.level);
    CHECK(brute_A(k, c.s, c.t, 3, c.level) == oracle);
    CHECK(brute_A(k, c.s, c.t, 3, c.level, en) == oracle);
  }
  auto k3 = FieldContext::make(-3);
  CHECK(brute_A(k3, D({1}), D({1}), 5, 1) == naive_count(k3, D({1}), D({1}), 5, 1));
  CHECK(brute_A(k3, D({1, 1}), D({2}), 5, 1) == naive_count(k3, D({1, 1}), D({2}), 5, 1));
}

TEST_CASE("orbit and enumerate strategies agree at higher level") {
  auto k = FieldContext::make(-4);
  CountOptions en;
  en.strategy = CountStrategy::enumerate;
  CHECK(brute_A(k, D({1, 3}), D({1, 3}), 3, 2) == brute_A(k, D({1, 3}), D({1, 3}), 3, 2, en));
  CHECK(brute_A(k, D({1, 1, 3}), D({1}), 3, 2) == brute_A(k, D({1, 1, 3}), D({1}), 3, 2, en));
  CHECK(brute_A(k, D({1, 1}), D({1, 3}), 3, 2) == brute_A(k, D({1, 1}), D({1, 3}), 3, 2, en));
}

TEST_CASE("counts are invariant under unimodular change of T") {
  auto k = FieldContext::make(-4);
  CountOptions en;
  en.strategy = CountStrategy::enumerate;
  std::mt19937_64 rng(17);
  const Int base = brute_A(k, D({1, 1}), D({1, 3}), 3, 1, en);
  const Int base2 = brute_A(k, D({1, 1}), D({1, 1}), 3, 1, en);
  for (int trial = 0; trial < 100; ++trial) {
    auto u = testing::random_unimodular(k, 2, rng);
    CHECK(brute_A(k, D({1, 1}), congruent(k, D({1, 3}), u), 3, 1, en) == base);
    CHECK(brute_A(k, D({1, 1}), congruent(k, D({1, 1}), u), 3, 1, en) == base2);
  }
}

TEST_CASE("stabilized densities") {
  auto k = FieldContext::make(-4);
  CHECK(alpha(k, D({1}), D({1}), 3).value == Rational(4, 3));
  CHECK(alpha(k, D({1, 1}), D({1, 1}), 3).value == Rational(32, 27));
  CHECK(alpha(k, D({1, 1}), D({1, 3}), 3).value == 0);
  CHECK(alpha(FieldContext::make(-3), D({1}), D({1}), 5).value == Rational(6, 5));
  CHECK(alpha(k, D({1, 1, 1}), D({1, 1, 1}), 3).value == alpha_selfdual(3, 3));
}

TEST_CASE("stabilization witness: the next level agrees") {
  auto k = FieldContext::make(-4);
  for (auto [s, t] : std::vector<std::pair<HermitianMatrix, HermitianMatrix>>{
           {D({1, 3}), D({1, 3})}, {D({1, 3}), D({3, 9})}, {D({1, 3}), D({1, 27})}, {D({1, 1, 3}), D({1})}, {D({1, 1}), D({1, 3})}}) {
    auto a = alpha(k, s, t, 3);
    CHECK(residue_count(k, s, t, 3, a.k_used + 1).scaled == a.value);
    CHECK(residue_count(k, s, t, 3, a.k_used + 2).scaled == a.value);
  }
}

TEST_CASE("nearly self-dual densities are independent of T") {
  auto k = FieldContext::make(-4);
  auto v = alpha(k, D({1, 3}), D({1, 3}), 3).value;
  CHECK(alpha(k, D({1, 3}), D({3, 9}), 3).value == v);
  CHECK(alpha(k, D({1, 3}), D({1, 27}), 3).value == v);
  // reduction: alpha(S', diag(1, T'')) = alpha(S', 1) * alpha(S'', T'')
  CHECK(alpha(k, D({1, 1, 3}), D({1, 1, 3}), 3).value == alpha(k, D({1, 1, 3}), D({1}), 3).value * v);
  CHECK(alpha(k, D({1, 1, 3}), D({1, 3, 9}), 3).value == alpha(k, D({1, 1, 3}), D({1}), 3).value * v);
}

TEST_CASE("closed forms") {
  CHECK(mu(0, 1, 3) == 1);
  CHECK(mu(1, 2, 3) == 5);
  CHECK(mu(0, 3, 7) == 2);
  CHECK(alpha_selfdual(1, 5) == Rational(6, 5));
  CHECK(alpha_selfdual(2, 3) == Rational(32, 27));
  CHECK(alpha_selfdual(3, 3) == Rational(896, 729));
  CHECK(alpha_nearly(2, 3) == Rational(112, 81));
  CHECK(alpha_nearly(3, 3) == Rational(8960, 6561));
  CHECK(code_of([] { alpha_nearly(1, 3); }) == ErrorCode::BadSize);
  CHECK(alpha_reduction_rhs(2, 3) == Rational(112, 81));
  CHECK(alpha_reduction_rhs(3, 3) == Rational(8960, 6561));
  CHECK(alpha_reduction_rhs(3, 5) == (1 - Rational(1, 625)) * Rational(6, 5) * Rational(126, 125));
}

TEST_CASE("density polynomial") {
  auto k = FieldContext::make(-4);
  auto f = density_poly(k, D({1}), D({1}), 3, 2);
  CHECK(f.evaluate(1) == Rational(4, 3));
  CHECK(f.evaluate(Rational(-1, 3)) == alpha(k, hyperbolic_augment(k, D({1}), 1), D({1}), 3).value);
  for (const auto& [r, v] : f.support_points) CHECK(f.evaluate(rpow(-3, -r)) == v);
  auto g = density_poly(k, D({1}), D({3}), 3, 4);
  CHECK(g.evaluate(1) == 0);
  CHECK(derivative_kappa() * g.derivative_at(1) == Rational(4, 3));
}

TEST_CASE("central derivative") {
  auto k = FieldContext::make(-4);
  CHECK(alpha_prime(k, D({1, 1}), D({1, 3}), 3) == Rational(32, 27));
  CHECK(alpha_prime(k, D({1, 1}), D({3, 9}), 3) == Rational(160, 27));
  CHECK(alpha_prime(k, D({1, 1}), D({1, 27}), 3) == Rational(64, 27));
  CHECK(code_of([&] { alpha_prime(k, D({1, 1}), D({1, 1}), 3); }) == ErrorCode::NotIncoherentLocal);
}
