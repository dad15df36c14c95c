#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uc/error.hpp"

using namespace uc;
using testing::D;

namespace {

HermitianMatrix m2(const FieldContext& ctx, OkElement a, OkElement b, OkElement c, OkElement d) {
  return HermitianMatrix::from_entries(ctx, 2, {a, b, c, d});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("construction validates conjugate symmetry") {
  auto k = FieldContext::make(-4);
  OkElement w{0, 1};
  CHECK_NOTHROW(m2(k, {1, 0}, w, k.conj(w), {3, 0}));
  CHECK(code_of([&] { m2(k, {1, 0}, w, w, {3, 0}); }) == ErrorCode::SymmetryError);
}

TEST_CASE("det_class") {
  auto k = FieldContext::make(-4);
  CHECK(det_class(k, D({1, 3})) == 3);
  CHECK(det_class(k, HermitianMatrix::identity(3)) == 1);
  CHECK(det_class(k, m2(k, {3, 0}, {1, 0}, {1, 0}, {3, 0})) == 8);
  // [[2, i], [-i, 2]] has det 3
  OkElement i{2, 1};
  CHECK(det_class(k, m2(k, {2, 0}, i, k.conj(i), {2, 0})) == 3);
}

TEST_CASE("space invariants") {
  auto k = FieldContext::make(-4);
  auto v = space_invariants(k, D({1, 3}));
  CHECK(v.sig == std::pair<int, int>{2, 0});
  CHECK(v.inv_at(3) == -1);
  CHECK(v.inv_at(2) == -1);  // forced by the product formula
  CHECK(v.inv.size() == 2);
  CHECK(space_invariants(k, D({1, -1})).sig == std::pair<int, int>{1, 1});
  OkElement i{2, 1};
  auto w = space_invariants(k, m2(k, {2, 0}, i, k.conj(i), {2, 0}));
  CHECK(w.sig == std::pair<int, int>{2, 0});
  CHECK(w.inv_at(3) == -1);
}

TEST_CASE("diff sets") {
  auto k = FieldContext::make(-4);
  CHECK(diff_sets(k, D({1, 3})).diff0 == std::vector<long>{3});
  CHECK(diff_sets(k, D({3, 7})).diff0 == std::vector<long>{3, 7});
  CHECK(diff_sets(k, D({1, 1})).diff0.empty());
  // positive definite T: |Diff(T, V)| is odd
  for (auto t : {D({1, 3}), D({3, 7}), D({1, 1}), D({2, 5}), D({1, 1, 3})}) CHECK(diff_sets(k, t).diff_v.size() % 2 == 1);
}

TEST_CASE("local Jordan exponents") {
  auto k = FieldContext::make(-4);
  CHECK(local_jordan_inert(k, D({1, 3}), 3).exponents == std::vector<int>{0, 1});
  CHECK(local_jordan_inert(k, m2(k, {3, 0}, {1, 0}, {1, 0}, {3, 0}), 3).exponents == std::vector<int>{0, 0});
  CHECK(code_of([&] { local_jordan_inert(k, D({1, 3}), 5); }) == ErrorCode::NotInert);
  CHECK(code_of([&] { local_jordan_inert(k, D({1, 3}), 2); }) == ErrorCode::EvenPrime);
}

TEST_CASE("Jordan exponents are invariant under unimodular change of basis") {
  auto k = FieldContext::make(-4);
  std::mt19937_64 rng(5);
  for (auto t : {D({1, 3, 9}), D({3, 3, 27}), D({1, 1, 3})}) {
    auto ref = local_jordan_inert(k, t, 3).exponents;
    for (int trial = 0; trial < 100; ++trial) {
      auto u = testing::random_unimodular(k, 3, rng);
      CHECK(local_jordan_inert(k, congruent(k, t, u), 3).exponents == ref);
    }
  }
}

TEST_CASE("nondegeneracy") {
  auto k = FieldContext::make(-4);
  auto a = nondegeneracy_report(k, D({1, 1, 3}), 3);
  CHECK(a.nondeg);
  CHECK(*a.a == 0);
  CHECK(*a.b == 1);
  CHECK(a.r0 == 1);
  CHECK(a.predicted_dim == 0);
  auto b = nondegeneracy_report(k, D({3, 3, 3}), 3);
  CHECK_FALSE(b.nondeg);
  CHECK(b.r0 == 3);
  CHECK(b.predicted_dim == 1);
  auto c = nondegeneracy_report(k, D({1, 3, 9}), 3);
  CHECK(c.nondeg);
  CHECK(*c.a == 1);
  CHECK(*c.b == 2);
}

TEST_CASE("relevant spaces") {
  CHECK(relevant_space_count(FieldContext::make(-4), 2, {1, 1}).count == 1);
  CHECK(relevant_space_count(FieldContext::make(-15), 2, {1, 1}).count == 2);
  CHECK(relevant_space_count(FieldContext::make(-15), 3, {2, 1}).strict_sim_count == 1);
}

TEST_CASE("Landherr") {
  auto k = FieldContext::make(-4);
  auto r = landherr(k, 2, {1, 1}, {{3, -1}});
  CHECK_FALSE(r.selfdual_feasible);
  CHECK(r.obstructed_at == std::vector<long>{3});
  CHECK(code_of([&] { landherr(k, 2, {2, 0}, {{3, -1}}); }) == ErrorCode::ProductFormulaViolation);
  auto k15 = FieldContext::make(-15);
  auto ok = landherr(k15, 2, {2, 0}, {{3, -1}, {5, -1}});
  CHECK(ok.invariants.inv_at(3) == -1);
  CHECK(ok.invariants.inv_at(5) == -1);
  // the realized determinant reproduces the requested signs
  auto inv = space_invariants(k15, D({1, ok.invariants.det_class.get_num().get_si()}));
  CHECK(inv.inv == ok.invariants.inv);
}
