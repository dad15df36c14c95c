#pragma once

#include <random>
#include <vector>

#include "uc/hermitian.hpp"

namespace testing {

inline uc::HermitianMatrix D(std::vector<long> d) { return uc::HermitianMatrix::diagonal(d); }

// Random element of GL_n(O_k): elementary row operations and unit scalings.
inline std::vector<uc::OkElement> random_unimodular(const uc::FieldContext& ctx, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> small(-2, 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<uc::OkElement> units;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      if (ctx.norm(uc::OkElement{a, b}) == 1) units.push_back({a, b});
  std::vector<uc::OkElement> u(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i * n + i)] = {1, 0};
  auto at = [&](int i, int j) -> uc::OkElement& { return u[static_cast<std::size_t>(i * n + j)]; };
  for (int step = 0; step < 5; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) {
      auto unit = units[rng() % units.size()];
      for (int c = 0; c < n; ++c) at(i, c) = ctx.mul(unit, at(i, c));
    } else {
      uc::OkElement f{small(rng), small(rng)};
      for (int c = 0; c < n; ++c) at(i, c) = at(i, c) + ctx.mul(f, at(j, c));
    }
  }
  return u;
}

}  // namespace testing
