#include <sstream>

#include "doctest.h"
#include "uc/cli/app.hpp"
#include "uc/cli/json_io.hpp"
#include "uc/error.hpp"

using namespace uc;
using namespace uc::cli;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  args.insert(args.begin(), "uc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = run(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

}  // namespace

TEST_CASE("parse_hermitian") {
  auto k = FieldContext::make(-4);
  auto t = parse_hermitian("[[[1,0],[0,0]],[[0,0],[3,0]]]", k);
  CHECK(t.size() == 2);
  CHECK(det_class(k, t) == 3);
  // conj(omega) = -4 - omega when delta = -4
  CHECK_NOTHROW(parse_hermitian("[[[1,0],[0,1]],[[-4,-1],[3,0]]]", k));
  CHECK_THROWS_AS(parse_hermitian("[[[1,0],[0,1]],[[0,1],[3,0]]]", k), Error);
  CHECK_THROWS_AS(parse_hermitian("[[1,2]]", k), Error);
  CHECK_THROWS_AS(parse_hermitian("not json", k), Error);
}

TEST_CASE("round trips") {
  auto k = FieldContext::make(-4);
  for (std::string text : {"[[[1,0],[0,0]],[[0,0],[3,0]]]", "[[[1,0],[0,1]],[[-4,-1],[3,0]]]", "[[[5,0]]]"}) {
    auto t = parse_hermitian(text, k);
    auto again = parse_hermitian(to_json(t).dump(), k);
    CHECK(to_json(again) == to_json(t));
  }
  auto l = nearly_selfdual_in(k, parse_hermitian("[[[1,0],[0,0]],[[0,0],[27,0]]]", k), 3);
  auto back = parse_lattice(to_json(l).dump(), k);
  CHECK(back == l);
}

TEST_CASE("exit codes") {
  auto a = call({"field", "info", "--delta", "-15"});
  CHECK(a.code == 0);
  auto j = Json::parse(a.out);
  CHECK(j["h"] == 2);
  CHECK(j["w"] == 2);
  CHECK(j["δ"] == 2);
  CHECK(call({"density", "alpha", "--delta", "-4", "--p", "5", "--S", "[[[1,0]]]", "--T", "[[[1,0]]]"}).code == 3);
  CHECK(call({"density", "alpha", "--delta", "-4", "--p", "3", "--S", "[[[1,0]]]", "--T", "[[[1,0]"}).code == 2);
  CHECK(call({"density", "alpha", "--p", "3", "--S", "[[[1,0]]]", "--T", "[[[1,0]]]"}).code == 2);
  CHECK(call({"field", "info", "--delta", "-15", "--bogus"}).code == 2);
  CHECK(call({"verify", "nosuch"}).code == 2);
  auto f = call({"verify", "field"});
  CHECK(f.code == 0);
  CHECK(Json::parse(f.out)["all_pass"] == true);
}

TEST_CASE("density output and determinism") {
  std::vector<std::string> args{"density", "alpha", "--delta", "-4", "--p", "3", "--S", "[[[1,0],[0,0]],[[0,0],[1,0]]]",
                                "--T", "[[[1,0],[0,0]],[[0,0],[1,0]]]"};
  auto a = call(args), b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = Json::parse(a.out);
  CHECK(j["alpha"] == "32/27");
  CHECK(j["k_used"] == 1);
}
