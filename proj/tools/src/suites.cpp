#include "uc/cli/suites.hpp"

#include <functional>
#include <random>

#include "uc/error.hpp"

namespace uc::cli {

namespace {

HermitianMatrix D(std::vector<long> d) { return HermitianMatrix::diagonal(d); }

std::string str(const Rational& q) { return to_string(q); }
std::string str(const Int& z) { return z.get_str(); }
std::string str(long v) { return std::to_string(v); }

// Exact rational equality when both sides are numbers, string equality otherwise.
bool same_value(const std::string& x, const std::string& y) {
  try {
    return parse_rational(x) == parse_rational(y);
  } catch (const Error&) {
    return x == y;
  }
}

class Runner {
 public:
  explicit Runner(std::string suite) { result_.suite = std::move(suite); }

  // got() computes the observed value; exceptions count as failures.
  void check(std::string id, int criterion, const std::string& expected, const std::function<std::string()>& got,
             bool informational = false) {
    Check c;
    c.id = std::move(id);
    c.criterion = criterion;
    c.expected = expected;
    c.informational = informational;
    try {
      c.got = got();
      c.pass = same_value(c.got, c.expected);
    } catch (const std::exception& e) {
      c.got = std::string("error: ") + e.what();
      c.pass = false;
    }
    if (!c.pass && !c.informational) result_.all_pass = false;
    result_.checks.push_back(std::move(c));
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

// Random matrix in GL_n(O_k): a product of elementary matrices and unit scalings.
std::vector<OkElement> random_unimodular(const FieldContext& ctx, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> small(-2, 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<OkElement> units;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      if (ctx.norm(OkElement{a, b}) == 1) units.push_back({a, b});
  std::vector<OkElement> u(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i * n + i)] = {1, 0};
  auto at = [&](int i, int j) -> OkElement& { return u[static_cast<std::size_t>(i * n + j)]; };
  for (int step = 0; step < 4; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) {
      // scale row i by a random unit
      const OkElement unit = units[static_cast<std::size_t>(rng() % units.size())];
      for (int c = 0; c < n; ++c) at(i, c) = ctx.mul(unit, at(i, c));
      continue;
    }
    OkElement f{small(rng), small(rng)};
    for (int c = 0; c < n; ++c) at(i, c) = at(i, c) + ctx.mul(f, at(j, c));
  }
  return u;
}

void field_checks(Runner& r) {
  auto m4 = FieldContext::make(-4), m15 = FieldContext::make(-15), m23 = FieldContext::make(-23);
  r.check("relevant_space_count(-4, n=2)", 11, "1", [&] { return str(relevant_space_count(m4, 2, {1, 1}).count); });
  r.check("relevant_space_count(-15, n=2)", 11, "2", [&] { return str(relevant_space_count(m15, 2, {1, 1}).count); });
  r.check("strict_sim_count(-15, n=3)", 11, "1", [&] { return str(relevant_space_count(m15, 3, {2, 1}).strict_sim_count); });
  r.check("moduli_component_count(-23, n=3)", 11, "3", [&] { return str(moduli_component_count(m23, 3, false)); });
  r.check("moduli_component_count(-15, n=2)", 11, "1", [&] { return str(moduli_component_count(m15, 2, false)); });
  r.check("moduli_component_count(-4, n=2, exceptional)", 11, "1", [&] { return str(moduli_component_count(m4, 2, true)); });
  r.check("h(-4)", 11, "1", [&] { return str(m4.class_number()); });
  r.check("h(-15)", 11, "2", [&] { return str(m15.class_number()); });
  r.check("h(-23)", 11, "3", [&] { return str(m23.class_number()); });

  r.check("hilbert product formula, 100 random rationals", 12, "100", [&] {
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<long> num(-5000, 5000), den(1, 3000);
    const std::vector<long> deltas{-3, -4, -7, -8, -15, -20, -23, -24};
    long good = 0;
    for (int trial = 0; trial < 100; ++trial) {
      long a = 0;
      while (a == 0) a = num(rng);
      Rational q(a, den(rng));
      q.canonicalize();
      auto ctx = FieldContext::make(deltas[static_cast<std::size_t>(trial) % deltas.size()]);
      Int support = 2 * q.get_num() * q.get_den() * ctx.delta();
      int prod = ctx.hilbert_chi(q, kInfinity);
      for (long p : prime_divisors(Int(abs(support)))) prod *= ctx.hilbert_chi(q, p);
      if (prod == 1) ++good;
    }
    return str(good);
  });
}

void density_checks(Runner& r, const CountOptions& opt) {
  auto q4 = FieldContext::make(-4);
  auto q3 = FieldContext::make(-3);
  auto alpha_of = [&](const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t, long p) {
    return alpha(ctx, s, t, p, opt);
  };
  // Stabilization witness: the scaled count at k_used + 1 equals the one at k_used.
  auto witness = [&](const std::string& label, const FieldContext& ctx, const HermitianMatrix& s, const HermitianMatrix& t,
                     long p) {
    r.check("stabilization witness " + label, 12, "equal", [&] {
      AlphaResult a = alpha_of(ctx, s, t, p);
      auto next = residue_count(ctx, s, t, p, a.k_used + 1, opt);
      return next.scaled == a.value ? std::string("equal") : "k=" + str(long(a.k_used)) + " " + str(a.value) + " vs " + str(next.scaled);
    });
  };

  // 1: self-dual closed forms
  r.check("alpha(1_1, 1_1, 3)", 1, str(alpha_selfdual(1, 3)), [&] { return str(alpha_of(q4, D({1}), D({1}), 3).value); });
  r.check("alpha(1_2, 1_2, 3)", 1, str(alpha_selfdual(2, 3)), [&] { return str(alpha_of(q4, D({1, 1}), D({1, 1}), 3).value); });
  r.check("alpha_selfdual(1, 3)", 1, "4/3", [&] { return str(alpha_selfdual(1, 3)); });
  r.check("alpha_selfdual(2, 3)", 1, "32/27", [&] { return str(alpha_selfdual(2, 3)); });
  r.check("alpha(1_1, 1_1, 5) over Q(sqrt -3)", 1, "6/5", [&] { return str(alpha_of(q3, D({1}), D({1}), 5).value); });
  r.check("column enumeration agrees, 1_2 at k=1", 1, str(brute_A(q4, D({1, 1}), D({1, 1}), 3, 1, opt)), [&] {
    CountOptions e = opt;
    e.strategy = CountStrategy::enumerate;
    return str(brute_A(q4, D({1, 1}), D({1, 1}), 3, 1, e));
  });
  witness("1_1", q4, D({1}), D({1}), 3);
  witness("1_2", q4, D({1, 1}), D({1, 1}), 3);
  witness("1_1 over Q(sqrt -3)", q3, D({1}), D({1}), 5);

  // 2 and 6: nearly self-dual S'' = diag(1, 3)
  const std::string nearly2 = "112/81";
  const std::vector<std::pair<std::string, HermitianMatrix>> tpp{
      {"diag(1,3)", D({1, 3})}, {"diag(3,9)", D({3, 9})}, {"diag(1,27)", D({1, 27})}};
  std::vector<Rational> vals;
  for (const auto& [name, t] : tpp) {
    r.check("alpha(diag(1,3), " + name + ", 3)", 2, nearly2, [&] {
      Rational v = alpha_of(q4, D({1, 3}), t, 3).value;
      vals.push_back(v);
      return str(v);
    });
    witness("diag(1,3) vs " + name, q4, D({1, 3}), t, 3);
  }
  r.check("(1+1/3)(1+1/27)", 2, nearly2, [&] { return str(Rational(4, 3) * Rational(28, 27)); });
  r.check("alpha_nearly(2, 3)", 6, nearly2, [&] { return str(alpha_nearly(2, 3)); }, true);
  r.check("T-independence: the three values coincide", 6, "true", [&] {
    if (vals.size() != 3) return std::string("incomplete");
    return std::string(vals[0] == vals[1] && vals[1] == vals[2] ? "true" : "false");
  });
  r.check("alpha(diag(1,3), diag(1,3), 3)", 6, nearly2, [&] { return str(alpha_of(q4, D({1, 3}), D({1, 3}), 3).value); });

  // 3: S' = diag(1,1,3) against (1)
  r.check("alpha(diag(1,1,3), (1), 3)", 3, "80/81", [&] { return str(alpha_of(q4, D({1, 1, 3}), D({1}), 3).value); });
  r.check("alpha_reduction_rhs(3, 3) factor 1-3^-4", 3, "80/81", [&] { return str(1 - rpow(3, -4)); }, true);
  witness("diag(1,1,3) vs (1)", q4, D({1, 1, 3}), D({1}), 3);

  // 4: reduction
  const Rational lhs_expected = Rational(80, 81) * Rational(112, 81);
  r.check("alpha(diag(1,1,3), diag(1,1,3), 3)", 4, str(lhs_expected),
          [&] { return str(alpha_of(q4, D({1, 1, 3}), D({1, 1, 3}), 3).value); });
  r.check("reduction structure: alpha(S',T) = alpha(S',1_1) alpha(S'',T'')", 4, "true", [&] {
    Rational lhs = alpha_of(q4, D({1, 1, 3}), D({1, 1, 3}), 3).value;
    Rational rhs = alpha_of(q4, D({1, 1, 3}), D({1}), 3).value * alpha_of(q4, D({1, 3}), D({1, 3}), 3).value;
    return std::string(lhs == rhs ? "true" : "false");
  }, true);
  witness("diag(1,1,3) vs diag(1,1,3)", q4, D({1, 1, 3}), D({1, 1, 3}), 3);

  // 7: vanishing
  r.check("alpha(1_2, diag(1,3), 3)", 7, "0", [&] { return str(alpha_of(q4, D({1, 1}), D({1, 3}), 3).value); });
  r.check("whittaker0 vanishes exactly on diff0", 7, "true", [&] {
    for (const auto& t : {D({1, 1}), D({1, 3}), D({1, 9}), D({3, 9}), D({1, 27}), D({3, 3})}) {
      bool zero = whittaker0(q4, t, D({1, 1}), 3, opt).rational_part == 0;
      auto d0 = diff_sets(q4, t).diff0;
      bool in_diff = std::find(d0.begin(), d0.end(), 3L) != d0.end();
      if (zero != in_diff) return std::string("false");
    }
    return std::string("true");
  });
  witness("1_2 vs diag(1,3)", q4, D({1, 1}), D({1, 3}), 3);

  // 8: volume ratio
  r.check("volume_ratio(2, 3)", 8, "7/54", [&] { return str(volume_ratio(2, 3)); });
  r.check("|det S'|^2 alpha(S',S') / alpha(S,S), n=2", 8, "7/54", [&] {
    return str(rpow(3, -2) * alpha_of(q4, D({1, 3}), D({1, 3}), 3).value / alpha_of(q4, D({1, 1}), D({1, 1}), 3).value);
  });
  r.check("|det S'| alpha(S',S') / alpha(S,S), n=1", 8, str(volume_ratio(1, 3)), [&] {
    return str(rpow(3, -1) * alpha_of(q4, D({3}), D({3}), 3).value / alpha_of(q4, D({1}), D({1}), 3).value);
  }, true);

  // 12: unimodular invariance
  r.check("brute_A and Jordan exponents under 100 unimodular transforms", 12, "100", [&] {
    std::mt19937_64 rng(7);
    CountOptions e = opt;
    e.strategy = CountStrategy::enumerate;
    const HermitianMatrix t = D({1, 3});
    const Int base = brute_A(q4, D({1, 1}), t, 3, 1, e);
    const auto jordan = local_jordan_inert(q4, D({1, 3, 9}), 3).exponents;
    long good = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto u2 = random_unimodular(q4, 2, rng);
      auto u3 = random_unimodular(q4, 3, rng);
      HermitianMatrix t2 = congruent(q4, t, u2);
      HermitianMatrix t3 = congruent(q4, D({1, 3, 9}), u3);
      if (brute_A(q4, D({1, 1}), t2, 3, 1, e) == base && local_jordan_inert(q4, t3, 3).exponents == jordan) ++good;
    }
    return str(good);
  });
}

void derivative_checks(Runner& r, const CountOptions& opt) {
  auto q4 = FieldContext::make(-4);
  r.check("pinned instance alpha'((1),(3),3)", 5, "4/3", [&] { return str(alpha_prime(q4, D({1}), D({3}), 3, opt)); });
  const std::vector<std::tuple<std::string, HermitianMatrix, int>> cases{
      {"diag(1,3)", D({1, 3}), 1}, {"diag(3,9)", D({3, 9}), 5}, {"diag(1,27)", D({1, 27}), 2}};
  for (const auto& [name, t, m] : cases) {
    r.check("mu(" + name + ")", 5, str(long(m)), [&] {
      auto nd = nondegeneracy_report(q4, t, 3);
      return str(mu(*nd.a, *nd.b, 3));
    });
    r.check("alpha'(1_2, " + name + ", 3)", 5, str(Rational(32, 27) * m), [&] { return str(alpha_prime(q4, D({1, 1}), t, 3, opt)); });
    r.check("whittaker_prime(" + name + ") / alpha'", 5, "1", [&] {
      return str(whittaker_prime(q4, t, 3).rational_part / alpha_prime(q4, D({1, 1}), t, 3, opt));
    });
  }
}

void lattice_checks(Runner& r) {
  auto q4 = FieldContext::make(-4);
  auto L = standard_lattice(q4, D({1, 1}));
  r.check("genus(1_2) classes", 9, "1", [&] { return str(long(genus_enumerate(L).classes.size())); });
  r.check("|Aut(1_2)|", 9, "32", [&] { return str(aut_group(L).order); });
  r.check("mass(1_2)", 9, "1/32", [&] { return str(genus_enumerate(L).mass); });
  r.check("rep_count(1_2, L)", 9, "32", [&] { return str(rep_count(D({1, 1}), L)); });
  r.check("r_gen(1_2)", 9, "1", [&] { return str(r_gen(D({1, 1}), genus_enumerate(L))); });
  r.check("dual-dual identity", 12, "true", [&] {
    for (const auto& t : {D({1, 1}), D({1, 3}), D({1, 9}), D({2, 5, 7})}) {
      auto l = standard_lattice(q4, t);
      if (!(dual_lattice(dual_lattice(l)) == l)) return std::string("false");
    }
    auto l = nearly_selfdual_in(q4, D({1, 27}), 3);
    return std::string(dual_lattice(dual_lattice(l)) == l ? "true" : "false");
  });
}

void maintheorem_checks(Runner& r) {
  auto q4 = FieldContext::make(-4);
  const Rational wh(q4.unit_count(), q4.class_number());
  for (const auto& [name, t] : std::vector<std::pair<std::string, HermitianMatrix>>{
           {"diag(1,3)", D({1, 3})}, {"diag(3,9)", D({3, 9})}, {"diag(1,27)", D({1, 27})}}) {
    FourierCoefficientReport rep;
    r.check("coefficient_report(" + name + ") status", 10, "inert_case p=3", [&] {
      rep = coefficient_report(q4, t);
      return to_string(rep.status) + " p=" + str(rep.p);
    });
    r.check("normalized / arithmetic degree (" + name + ")", 10, str(wh), [&] {
      if (rep.arithmetic_degree == 0) return std::string("zero arithmetic degree");
      return str(rep.normalized_coefficient / rep.arithmetic_degree);
    });
    r.check("r_gen over the nearly self-dual genus (" + name + ")", 10, "positive", [&] {
      return std::string(rep.r_gen_lprime > 0 ? "positive" : "zero");
    });
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"field", "densities", "derivative", "lattice", "maintheorem", "all"};
  return names;
}

SuiteResult verify_suite(const std::string& name, const CountOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw Error(ErrorCode::SuiteUnknown, "unknown suite '" + name + "'");
  Runner r(name);
  const bool all = name == "all";
  if (all || name == "field") field_checks(r);
  if (all || name == "densities") density_checks(r, opt);
  if (all || name == "derivative") derivative_checks(r, opt);
  if (all || name == "lattice") lattice_checks(r);
  if (all || name == "maintheorem") maintheorem_checks(r);
  return r.take();
}

Json to_json(const SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id}, {"criterion", c.criterion}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass},
                      {"informational", c.informational}});
  return {{"suite", r.suite}, {"checks", checks}, {"all_pass", r.all_pass}};
}

}  // namespace uc::cli
