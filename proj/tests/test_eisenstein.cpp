#include "doctest.h"
#include "helpers.hpp"
#include "uc/eisenstein.hpp"
#include "uc/error.hpp"

using namespace uc;
using testing::D;

TEST_CASE("gamma signs and L-factors") {
  auto k = FieldContext::make(-4);
  CHECK(gamma_unit(k, space_invariants(k, D({1, 1})), 3) == 1);
  CHECK(gamma_unit(k, space_invariants(k, D({1, 3})), 3) == -1);
  CHECK_THROWS_AS(gamma_unit(k, space_invariants(k, D({1, 1})), 2), Error);
  CHECK(l_factor_inv(1, 3) == Rational(4, 3));
  CHECK(l_factor_inv(2, 3) == Rational(32, 27));
  CHECK(l_factor_inv(3, 5) == Rational(18144, 15625));
  for (int n = 1; n <= 4; ++n) CHECK(l_factor_inv(n, 7) == alpha_selfdual(n, 7));
}

TEST_CASE("Whittaker values") {
  auto k = FieldContext::make(-4);
  CHECK(whittaker0(k, D({1, 3}), D({1, 1}), 3).rational_part == 0);
  auto w = whittaker0(k, D({1, 1}), D({1, 1}), 3);
  CHECK(w.rational_part == Rational(32, 27));
  CHECK(w.gamma_power == 1);
  auto v = whittaker0(k, D({1, 3}), D({1, 3}), 3);
  CHECK(v.rational_part == rpow(3, -2) * alpha(k, D({1, 3}), D({1, 3}), 3).value);
  CHECK(whittaker_prime(k, D({1, 3}), 3).rational_part == Rational(32, 27));
  CHECK(whittaker_prime(k, D({1, 3}), 3).log_p_power == 1);
  CHECK(whittaker_prime(k, D({3, 9}), 3).rational_part == Rational(160, 27));
  CHECK_THROWS_AS(whittaker_prime(k, D({3, 3}), 3), Error);
  for (auto t : {D({1, 3}), D({3, 9}), D({1, 27})})
    CHECK(whittaker_prime(k, t, 3).rational_part == alpha_prime(k, D({1, 1}), t, 3));
}

TEST_CASE("volume ratio") {
  CHECK(volume_ratio(1, 3) == Rational(1, 3));
  CHECK(volume_ratio(2, 3) == Rational(7, 54));
  CHECK(volume_ratio(3, 3) == Rational(10, 243));
}

TEST_CASE("coefficient reports") {
  auto k = FieldContext::make(-4);
  auto a = coefficient_report(k, D({3, 7}));
  CHECK(a.status == CoefficientStatus::vanishes_identically);
  CHECK(a.diff.diff0 == std::vector<long>{3, 7});
  CHECK(a.arithmetic_degree == 0);
  CHECK(coefficient_report(k, D({1, 1})).status == CoefficientStatus::ramified_support);
  for (auto t : {D({1, 3}), D({3, 9}), D({1, 27})}) {
    auto r = coefficient_report(k, t);
    CHECK(r.status == CoefficientStatus::inert_case);
    CHECK(r.p == 3);
    CHECK(r.normalized_coefficient == r.mu * r.r_gen_lprime);
    CHECK(r.normalized_coefficient / r.arithmetic_degree == Rational(k.unit_count(), k.class_number()));
  }
  CHECK(coefficient_report(k, D({1, 3})).mu == 1);
  CHECK_THROWS_AS(coefficient_report(k, D({3, 3, 3})), Error);
}
