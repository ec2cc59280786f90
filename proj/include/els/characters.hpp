#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "els/arith.hpp"

namespace els::series {

/// The four Dirichlet characters mod 8, indexed 1..4, on n = 1, 3, 5, 7:
///   chi_1: 1  1  1  1
///   chi_2: 1  1 -1 -1
///   chi_3: 1 -1 -1  1
///   chi_4: 1 -1  1 -1
inline int chi_value(int i, std::int64_t n) {
  static constexpr std::array<std::array<int, 4>, 4> table = {{
      {1, 1, 1, 1},
      {1, 1, -1, -1},
      {1, -1, -1, 1},
      {1, -1, 1, -1},
  }};
  if (i < 1 || i > 4) throw std::invalid_argument("chi_value: index must be 1..4");
  std::int64_t r = n % 8;
  if (r < 0) r += 8;
  if (r % 2 == 0) return 0;
  return table[i - 1][r / 2];
}

/// psi_r(n) = (n / r) for an odd prime r.
inline int psi_value(std::uint64_t r, std::int64_t n) {
  return arith::jacobi(n, static_cast<std::int64_t>(r));
}

}  // namespace els::series
