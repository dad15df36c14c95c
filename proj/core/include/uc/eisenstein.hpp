#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uc/density.hpp"
#include "uc/lattice.hpp"

namespace uc {

/// rational_part * gamma_power * (log p)^log_p_power, log p kept symbolic.
struct WhittakerValue {
  Rational rational_part;
  int gamma_power = 1;
  int log_p_power = 0;
};

/// (delta, det V)_p at an odd prime not dividing delta.
int gamma_unit(const FieldContext& ctx, const SpaceInvariants& v, long p);

/// prod_{i=1}^n (1 - (-1)^i p^{-i}).
Rational l_factor_inv(int n, long p);

WhittakerValue whittaker0(const FieldContext& ctx, const HermitianMatrix& t, const HermitianMatrix& s, long p,
                          const CountOptions& opt = {});
WhittakerValue whittaker_prime(const FieldContext& ctx, const HermitianMatrix& t, long p);

/// p^{-n} (1 - (-1)^{n+1} p^{-n-1}) / (1 - p^{-2}).
Rational volume_ratio(int n, long p);

enum class CoefficientStatus { vanishes_identically, ramified_support, inert_case };
std::string to_string(CoefficientStatus s);

struct GenusSummary {
  LatticeType type_at_2 = LatticeType::I;  // meaningful only when 2 ramifies
  std::size_t classes = 0;
  Rational mass;
  Rational r_gen;
};

struct FourierCoefficientReport {
  HermitianMatrix t{0};
  CoefficientStatus status = CoefficientStatus::ramified_support;
  DiffReport diff;
  long p = 0;
  Rational mu;
  Rational r_gen_lprime;
  Rational normalized_coefficient;
  Rational arithmetic_degree;
  std::vector<GenusSummary> genera;
};

FourierCoefficientReport coefficient_report(const FieldContext& ctx, const HermitianMatrix& t);

}  // namespace uc
