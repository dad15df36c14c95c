#include <random>

#include "doctest.h"
#include "uc/error.hpp"
#include "uc/quadfield.hpp"

using namespace uc;

namespace {

// Dirichlet: h = -(w / 2|d|) sum_{a=1}^{|d|} (d|a) a. Independent of form reduction.
long class_number_dirichlet(long d, int w) {
  long sum = 0;
  for (long a = 1; a < -d; ++a) {
    // Kronecker symbol (d|a) by multiplicativity over the factorization of a
    long x = a;
    int chi = 1;
    for (long q = 2; q <= x; ++q) {
      while (x % q == 0) {
        chi *= kronecker(d, q);
        x /= q;
      }
    }
    sum += chi * a;
  }
  return -w * sum / (2 * -d);
}

}  // namespace

TEST_CASE("field data") {
  auto k4 = FieldContext::make(-4);
  CHECK(k4.ramified_count() == 1);
  CHECK(k4.class_number() == 1);
  CHECK(k4.unit_count() == 4);
  auto k3 = FieldContext::make(-3);
  CHECK(k3.class_number() == 1);
  CHECK(k3.unit_count() == 6);
  auto k15 = FieldContext::make(-15);
  CHECK(k15.ramified_count() == 2);
  CHECK(k15.class_number() == 2);
  CHECK(k15.unit_count() == 2);
  CHECK(FieldContext::make(-23).class_number() == 3);
  CHECK_THROWS_AS(FieldContext::make(-12), Error);
  CHECK_THROWS_AS(FieldContext::make(5), Error);
}

TEST_CASE("class numbers agree with the analytic formula") {
  for (long d = -3; d >= -400; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    auto k = FieldContext::make(d);
    CAPTURE(d);
    CHECK(k.class_number() == class_number_dirichlet(d, k.unit_count()));
  }
}

TEST_CASE("splitting") {
  auto k = FieldContext::make(-4);
  CHECK(k.splitting(5) == SplitType::split);
  CHECK(k.splitting(3) == SplitType::inert);
  CHECK(k.splitting(2) == SplitType::ramified);
  // inert iff chi_p(p) = -1 for odd p not dividing delta
  for (long d : {-3L, -4L, -7L, -15L, -23L})
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
      auto c = FieldContext::make(d);
      if (d % p == 0) continue;
      CHECK((c.splitting(p) == SplitType::inert) == (c.hilbert_chi(p, p) == -1));
    }
}

TEST_CASE("hilbert_chi examples") {
  auto k = FieldContext::make(-4);
  CHECK(k.hilbert_chi(1, 3) == 1);
  CHECK(k.hilbert_chi(3, 3) == -1);
  CHECK(k.hilbert_chi(-1, kInfinity) == -1);
}

TEST_CASE("hilbert product formula on random rationals") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 50000);
  const long deltas[] = {-3, -4, -7, -8, -11, -15, -20, -24, -35, -40};
  for (int trial = 0; trial < 100; ++trial) {
    long a = 0;
    while (a == 0) a = num(rng);
    Rational q(a, den(rng));
    q.canonicalize();
    auto ctx = FieldContext::make(deltas[trial % 10]);
    int prod = ctx.hilbert_chi(q, kInfinity);
    for (long p : prime_divisors(Int(2 * q.get_num() * q.get_den() * ctx.delta()))) prod *= ctx.hilbert_chi(q, p);
    CAPTURE(to_string(q));
    CHECK(prod == 1);
  }
}

TEST_CASE("arithmetic in O_k") {
  auto k = FieldContext::make(-4);
  OkElement i{2, 1};  // omega = -2 + i
  CHECK(k.norm(i) == 1);
  CHECK(k.mul(i, i) == OkElement{-1, 0});
  CHECK(k.norm(OkElement{4, 1}) == 5);  // 2 + i
  CHECK(k.norm(OkElement{0, 0}) == 0);
  auto e = FieldContext::make(-3);
  CHECK(e.norm(OkElement{0, 1}) == 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int t = 0; t < 200; ++t) {
    OkElement x{c(rng), c(rng)}, y{c(rng), c(rng)};
    CHECK(k.norm(k.mul(x, y)) == k.norm(x) * k.norm(y));
    CHECK(k.conj(k.mul(x, y)) == k.mul(k.conj(x), k.conj(y)));
  }
}

TEST_CASE("moduli component counts") {
  CHECK(moduli_component_count(FieldContext::make(-23), 3, false) == 3);
  CHECK(moduli_component_count(FieldContext::make(-15), 2, false) == 1);
  CHECK(moduli_component_count(FieldContext::make(-4), 2, true) == 1);
}
