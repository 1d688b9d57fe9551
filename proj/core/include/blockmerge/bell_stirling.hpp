#pragma once

#include <vector>

#include "blockmerge/exact_rational.hpp"

namespace blockmerge {

/// Bell numbers B_0..B_L and Stirling numbers of the second kind {l m},
/// 0 <= m <= l <= L.
struct BellStirlingTable {
  std::vector<BigInt> bell;
  /// stirling2[l][m] for 0 <= m <= l.
  std::vector<std::vector<BigInt>> stirling2;

  unsigned max_index() const { return static_cast<unsigned>(bell.size()) - 1; }
  /// {l m}, zero outside the triangle.
  BigInt stirling(unsigned l, unsigned m) const;
};

/// Fills the Stirling triangle with {l+1 m} = m {l m} + {l m-1}, takes Bell
/// numbers as row sums, and checks sum_m m {l m} = B_{l+1} - B_l for every
/// l < L. Throws InternalConsistencyError if that check fails.
BellStirlingTable bell_stirling(unsigned max_index);

/// Shared table grown on demand.
BigInt bell_number(unsigned l);

}  // namespace blockmerge
