// Acceptance report: one PASS/FAIL line per criterion.
//   acceptance [--require 1,5,7]   exit 1 when a listed criterion fails
#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "uc/cli/suites.hpp"

int main(int argc, char** argv) {
  std::set<int> required;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--require") {
      std::stringstream ss(argv[i + 1]);
      for (std::string tok; std::getline(ss, tok, ',');) required.insert(std::stoi(tok));
    }

  static const std::map<int, std::string> titles{
      {1, "self-dual densities vs closed form"},
      {2, "nearly self-dual density (1+p^-1)(1+p^-3)"},
      {3, "density of diag(1,1,p) at (1)"},
      {4, "reduction formula"},
      {5, "derivative identity"},
      {6, "T-independence"},
      {7, "vanishing"},
      {8, "volume ratio"},
      {9, "lattice counting"},
      {10, "coefficient pipeline"},
      {11, "counting invariants"},
      {12, "property suites"},
  };

  auto t0 = std::chrono::steady_clock::now();
  auto result = uc::cli::verify_suite("all");
  auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count() / 1000.0;

  std::map<int, std::vector<const uc::cli::Check*>> by;
  for (const auto& c : result.checks) by[c.criterion].push_back(&c);

  int failed_required = 0, passed = 0;
  for (const auto& [id, title] : titles) {
    bool ok = !by[id].empty();
    for (const auto* c : by[id])
      if (!c->informational && !c->pass) ok = false;
    passed += ok;
    if (!ok && required.count(id)) ++failed_required;
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << title << '\n';
    for (const auto* c : by[id]) {
      if (c->pass && !c->informational) continue;
      std::cout << "    " << (c->pass ? "ok  " : "diff") << (c->informational ? " (info) " : " ") << c->id
                << ": expected " << c->expected << ", got " << c->got << '\n';
    }
  }
  std::cout << "criteria reported: " << titles.size() << ", passed: " << passed << ", wall " << secs << " s\n";
  return failed_required ? 1 : 0;
}
