#pragma once

#include <string>
#include <vector>

#include "uc/cli/json_io.hpp"

namespace uc::cli {

struct Check {
  std::string id;
  int criterion = 0;  // acceptance criterion the check belongs to
  std::string expected;
  std::string got;
  bool pass = false;
  bool informational = false;  // reported, but does not gate the criterion
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool all_pass = true;  // over gating checks
};

const std::vector<std::string>& suite_names();

/// Runs one of field, densities, derivative, lattice, maintheorem, all.
/// Throws SuiteUnknown.
SuiteResult verify_suite(const std::string& name, const CountOptions& opt = {});

Json to_json(const SuiteResult& r);

}  // namespace uc::cli
