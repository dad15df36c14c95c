#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uc/error.hpp"
#include "uc/lattice.hpp"

using namespace uc;
using testing::D;

namespace {

// Vectors of the standard lattice with h(x, x) = t, by a coordinate box search.
long box_count(const FieldContext& ctx, const HermitianMatrix& gram, const Rational& t, long r) {
  const int n = gram.size();
  const KMatrix g = gram.to_k();
  std::vector<long> c(static_cast<std::size_t>(2 * n), -r);
  long count = 0;
  for (;;) {
    KVec x;
    for (int i = 0; i < n; ++i) x.push_back({c[static_cast<std::size_t>(2 * i)], c[static_cast<std::size_t>(2 * i + 1)]});
    if (form_value(ctx, g, x, x).a == t) ++count;
    std::size_t d = 0;
    while (d < c.size() && ++c[d] > r) c[d++] = -r;
    if (d == c.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("dual lattices") {
  auto k = FieldContext::make(-4);
  auto l = standard_lattice(k, D({1, 1}));
  CHECK(dual_lattice(l) == l);
  auto m = standard_lattice(k, D({1, 3}));
  auto shape = relative_divisors(m.basis(), dual_lattice(m).basis());
  Int order = 1;
  for (const auto& e : shape) order *= e;
  CHECK(order == 9);
}

TEST_CASE("dual of the dual on random lattices") {
  auto k = FieldContext::make(-7);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-4, 4), den(1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<KVec> gens;
    for (int g = 0; g < 3; ++g) gens.push_back({KElement{Rational(c(rng), den(rng)), Rational(c(rng))}, KElement{Rational(c(rng)), Rational(c(rng), den(rng))}});
    gens.push_back({KElement{1, 0}, KElement{0, 0}});
    gens.push_back({KElement{0, 0}, KElement{1, 0}});
    auto l = HermitianLattice::from_generators(k, D({2, 3}).to_k(), gens);
    CHECK(dual_lattice(dual_lattice(l)) == l);
  }
}

TEST_CASE("self-dual status") {
  auto k = FieldContext::make(-4);
  CHECK(selfdual_status(standard_lattice(k, D({1, 1}))).kind == SelfDualStatus::Kind::selfdual);
  auto s = selfdual_status(standard_lattice(k, D({1, 3})));
  CHECK(s.kind == SelfDualStatus::Kind::nearly);
  CHECK(s.p == 3);
  CHECK(selfdual_status(standard_lattice(k, D({1, 9}))).kind == SelfDualStatus::Kind::other);
}

TEST_CASE("short vectors match a box search") {
  auto k = FieldContext::make(-4);
  auto l = standard_lattice(k, D({1, 1}));
  CHECK(short_vectors(l, 1).size() == 8);
  CHECK(short_vectors(l, 2).size() == 24);
  CHECK(short_vectors(l, 0).empty());
  for (long t = 1; t <= 6; ++t) CHECK(static_cast<long>(short_vectors(l, t).size()) == box_count(k, D({1, 1}), t, 7));
  auto k3 = FieldContext::make(-3);
  auto m = standard_lattice(k3, D({1, 2}));
  for (long t = 1; t <= 5; ++t) CHECK(static_cast<long>(short_vectors(m, t).size()) == box_count(k3, D({1, 2}), t, 7));
}

TEST_CASE("automorphism groups") {
  auto k = FieldContext::make(-4);
  CHECK(aut_group(standard_lattice(k, D({1}))).order == 4);
  auto a = aut_group(standard_lattice(k, D({1, 1})));
  CHECK(a.order == 32);  // 2! * 4^2 signed-unit monomials
  CHECK(aut_group(standard_lattice(k, D({1, 3}))).order == 16);
  CHECK(aut_group(standard_lattice(FieldContext::make(-3), D({1}))).order == 6);
  // generators preserve the lattice and the form
  auto l = standard_lattice(k, D({1, 1}));
  for (const auto& g : a.generators)
    for (const auto& z : l.zgens()) {
      auto w = apply(k, z, g);
      CHECK(l.contains(w));
      CHECK(l.h(w, w) == l.h(z, z));
    }
}

TEST_CASE("isometry") {
  auto k = FieldContext::make(-4);
  CHECK(isometric(standard_lattice(k, D({1, 3})), standard_lattice(k, D({3, 1}))).isometric);
  CHECK_FALSE(isometric(standard_lattice(k, D({1, 1})), standard_lattice(k, D({1, 3}))).isometric);
  std::mt19937_64 rng(29);
  auto base = standard_lattice(k, D({1, 3}));
  for (int trial = 0; trial < 10; ++trial) {
    auto u = testing::random_unimodular(k, 2, rng);
    auto other = standard_lattice(k, congruent(k, D({1, 3}), u));
    auto r = isometric(base, other);
    CHECK(r.isometric);
    REQUIRE(r.witness);
    for (const auto& z : base.zgens()) CHECK(other.contains(apply(k, z, *r.witness)));
  }
  CHECK_THROWS_AS(isometric(standard_lattice(k, D({1})), standard_lattice(k, D({1, 1}))), Error);
}

TEST_CASE("neighbours") {
  auto k = FieldContext::make(-4);
  auto nb = neighbors(standard_lattice(k, D({1, 1})), 5);
  CHECK_FALSE(nb.empty());
  for (const auto& l : nb) CHECK(selfdual_status(l).kind == SelfDualStatus::Kind::selfdual);
  for (const auto& l : neighbors(standard_lattice(k, D({1, 3})), 13)) CHECK(selfdual_status(l).kind == SelfDualStatus::Kind::nearly);
  CHECK(neighbors(standard_lattice(k, D({1})), 5).empty());
  CHECK_THROWS_AS(neighbors(standard_lattice(k, D({1, 1})), 3), Error);
}

TEST_CASE("genera, representation numbers") {
  auto k = FieldContext::make(-4);
  auto g = genus_enumerate(standard_lattice(k, D({1, 1})));
  CHECK(g.classes.size() == 1);
  CHECK(g.mass == Rational(1, 32));
  CHECK(rep_count(D({1, 1}), g.classes[0]) == 32);
  CHECK(r_gen(D({1, 1}), g) == 1);
  auto g1 = genus_enumerate(standard_lattice(k, D({1})));
  CHECK(g1.mass == Rational(1, 4));
  CHECK(rep_count(D({1}), standard_lattice(k, D({1}))) == 4);
  CHECK(r_gen(D({1}), g1) == 1);
  auto g13 = genus_enumerate(standard_lattice(k, D({1, 3})));
  Rational mass = 0;
  for (long a : g13.aut_orders) mass += Rational(1, a);
  CHECK(g13.mass == mass);
  CHECK(rep_count(D({1, 3}), standard_lattice(k, D({1, 3}))) == 16);
  auto g19 = genus_enumerate(standard_lattice(k, D({1, 9})));
  CHECK(g19.classes.size() == 2);
  CHECK_THROWS_AS(genus_enumerate(standard_lattice(k, D({1, 9})), {}, 1), Error);
}

TEST_CASE("nearly self-dual lattices") {
  auto k = FieldContext::make(-4);
  CHECK(nearly_selfdual_in(k, D({1, 3}), 3) == standard_lattice(k, D({1, 3})));
  auto l = nearly_selfdual_in(k, D({1, 27}), 3);
  CHECK(selfdual_status(l).kind == SelfDualStatus::Kind::nearly);
  CHECK(isometric(l, standard_lattice(k, D({1, 3}))).isometric);
  CHECK_THROWS_AS(nearly_selfdual_in(k, D({1, 1}), 3), Error);
}

TEST_CASE("type at 2") {
  auto k = FieldContext::make(-4);
  auto h = HermitianMatrix::from_entries(k, 2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}});
  CHECK(lattice_type_at_2(standard_lattice(k, h)) == LatticeType::II);
  CHECK(lattice_type_at_2(standard_lattice(k, D({1, -1}))) == LatticeType::I);
  CHECK(lattice_type_at_2(standard_lattice(k, D({1, 1}))) == LatticeType::I);
  CHECK_THROWS_AS(lattice_type_at_2(standard_lattice(FieldContext::make(-3), D({1}))), Error);
  auto m = opposite_type_at_2(standard_lattice(k, D({1, 3})));
  CHECK(lattice_type_at_2(m) == LatticeType::II);
  CHECK(selfdual_status(m).kind == SelfDualStatus::Kind::nearly);
  CHECK(selfdual_orbits_at_2(k, D({1, 3})) == 2);
  CHECK(selfdual_orbits_at_2(k, D({1, 1})) == 1);
  CHECK(selfdual_orbits_at_2(FieldContext::make(-7), D({1, 3})) == 1);
}
