#pragma once

// The |Z| = n-2 family for which the min-incidence bound fails:
//   S = {01, 12}, Z = {02} + {1i : 3 <= i < n}, T = every other edge.
// n = 5 is accepted as well; it is the smallest drawn instance.

#include <cstdint>

#include "knlab/kncore.hpp"

namespace knlab {

struct SharpnessReport {
  int n = 0;
  std::int64_t i_st = 0;
  std::int64_t i_zs = 0;
  std::int64_t i_zt = 0;
  bool violates_min_bound = false;  // i_st < min(i_zt, i_zs)

  // I_ST = 2(n-3), I_ZS = 2(n-3)+2, I_ZT >= (n-3)(n-1).
  bool matches_closed_forms() const noexcept;
};

// Throws std::domain_error for n < 5.
EdgePartition sharp_family(int n);
SharpnessReport verify_sharpness(int n);

}  // namespace knlab
