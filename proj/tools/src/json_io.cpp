#include "uc/cli/json_io.hpp"

#include "uc/error.hpp"

namespace uc::cli {

namespace {

Error schema(const std::string& what) { return Error(ErrorCode::SchemaError, what); }

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw schema(std::string("malformed JSON: ") + e.what());
  }
}

Int json_integer(const Json& j) {
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw schema("expected an integer, got " + j.get<std::string>());
    return q.get_num();
  }
  throw schema("expected an integer, got " + j.dump());
}

Rational json_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(json_integer(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw schema("expected a rational, got " + j.dump());
}

template <class R, class F>
Quad<R> json_pair(const Json& j, F&& conv) {
  if (!j.is_array() || j.size() != 2) throw schema("an element must be a pair [a, b], got " + j.dump());
  return {conv(j[0]), conv(j[1])};
}

Json element_json(const KElement& x) {
  auto one = [](const Rational& q) { return q.get_den() == 1 ? integer_json(q.get_num()) : rational_json(q); };
  return Json::array({one(x.a), one(x.b)});
}

Json kmatrix_json(const KMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(element_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json primes_json(const std::vector<long>& ps) { return Json(ps); }

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Json integer_json(const Int& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

HermitianMatrix hermitian_from_json(const Json& j, const FieldContext& ctx) {
  if (!j.is_array() || j.empty()) throw schema("a hermitian matrix is a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  std::vector<OkElement> entries;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw schema("matrix must be square");
    for (const auto& x : row) entries.push_back(json_pair<Int>(x, json_integer));
  }
  return HermitianMatrix::from_entries(ctx, n, std::move(entries));
}

HermitianMatrix parse_hermitian(const std::string& text, const FieldContext& ctx) {
  return hermitian_from_json(parse_text(text), ctx);
}

Json to_json(const HermitianMatrix& t) {
  Json rows = Json::array();
  for (int i = 0; i < t.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < t.size(); ++j) row.push_back(Json::array({integer_json(t(i, j).a), integer_json(t(i, j).b)}));
    rows.push_back(row);
  }
  return rows;
}

HermitianLattice parse_lattice(const std::string& text, const FieldContext& ctx) {
  Json j = parse_text(text);
  if (!j.is_object() || !j.contains("gram") || !j.contains("zgens")) throw schema("a lattice is {\"gram\": ..., \"zgens\": ...}");
  const Json& g = j["gram"];
  if (!g.is_array() || g.empty()) throw schema("gram must be a non-empty array of rows");
  const int n = static_cast<int>(g.size());
  KMatrix gram(n, n);
  for (int r = 0; r < n; ++r) {
    if (!g[static_cast<std::size_t>(r)].is_array() || static_cast<int>(g[static_cast<std::size_t>(r)].size()) != n)
      throw schema("gram must be square");
    for (int c = 0; c < n; ++c) gram(r, c) = json_pair<Rational>(g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], json_rational);
  }
  if (!is_hermitian(ctx, gram)) throw Error(ErrorCode::SymmetryError, "gram is not hermitian");
  std::vector<KVec> gens;
  for (const auto& v : j["zgens"]) {
    if (!v.is_array() || static_cast<int>(v.size()) != n) throw schema("each generator needs " + std::to_string(n) + " coordinates");
    KVec x;
    for (const auto& e : v) x.push_back(json_pair<Rational>(e, json_rational));
    gens.push_back(std::move(x));
  }
  return HermitianLattice::from_generators(ctx, gram, gens);
}

Json to_json(const HermitianLattice& l) {
  Json gens = Json::array();
  for (const auto& z : l.zgens()) {
    Json v = Json::array();
    for (const auto& x : z) v.push_back(Json::array({rational_json(x.a), rational_json(x.b)}));
    gens.push_back(v);
  }
  return {{"gram", kmatrix_json(l.gram())}, {"zgens", gens}};
}

Json to_json(const SpaceInvariants& v) {
  Json inv = Json::object();
  for (const auto& [p, s] : v.inv) inv[std::to_string(p)] = s;
  return {{"n", v.n}, {"sig", Json::array({v.sig.first, v.sig.second})}, {"inv", inv}, {"det_class", rational_json(v.det_class)}};
}

Json to_json(const DiffReport& d) { return {{"diff_v", primes_json(d.diff_v)}, {"diff0", primes_json(d.diff0)}}; }

Json to_json(const AlphaResult& a) {
  Json levels = Json::array();
  for (const auto& l : a.levels) levels.push_back({{"k", l.k}, {"count", integer_json(l.count)}, {"scaled", rational_json(l.scaled)}});
  return {{"alpha", rational_json(a.value)}, {"k_used", a.k_used}, {"count", integer_json(a.count)}, {"levels", levels}};
}

Json to_json(const DensityPolynomial& f) {
  Json coeffs = Json::array(), pts = Json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(rational_json(c));
  for (const auto& [r, v] : f.support_points) pts.push_back(Json::array({r, rational_json(v)}));
  return {{"p", f.p}, {"coeffs", coeffs}, {"support_points", pts}, {"degree", f.degree()}};
}

Json to_json(const WhittakerValue& w) {
  Json times = Json::array();
  if (w.log_p_power == 1) times.push_back("log_p");
  return {{"rational_part", rational_json(w.rational_part)}, {"gamma_power", w.gamma_power},
          {"log_p_power", w.log_p_power}, {"times", times}};
}

Json to_json(const FourierCoefficientReport& r) {
  Json j = {{"T", to_json(r.t)}, {"status", to_string(r.status)}, {"diff", to_json(r.diff)}};
  if (r.status == CoefficientStatus::ramified_support) return j;
  j["mu"] = rational_json(r.mu);
  j["r_gen_Lprime"] = rational_json(r.r_gen_lprime);
  j["normalized_coefficient"] = rational_json(r.normalized_coefficient);
  j["arithmetic_degree"] = rational_json(r.arithmetic_degree);
  j["times"] = Json::array({"log_p", "q^T", "C"});
  if (r.status == CoefficientStatus::inert_case) {
    j["p"] = r.p;
    Json genera = Json::array();
    for (const auto& g : r.genera)
      genera.push_back({{"classes", g.classes}, {"mass", rational_json(g.mass)}, {"r_gen", rational_json(g.r_gen)},
                        {"type_at_2", g.type_at_2 == LatticeType::I ? "I" : "II"}});
    j["genera"] = genera;
  }
  return j;
}

Json to_json(const GenusRecord& g) {
  Json classes = Json::array();
  for (const auto& l : g.classes) classes.push_back(to_json(l));
  return {{"classes", classes}, {"aut_orders", g.aut_orders}, {"mass", rational_json(g.mass)}, {"class_count", g.classes.size()}};
}

}  // namespace uc::cli
