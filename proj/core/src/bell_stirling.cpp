#include "blockmerge/bell_stirling.hpp"

#include <mutex>
#include <string>

#include "blockmerge/errors.hpp"

namespace blockmerge {

BigInt BellStirlingTable::stirling(unsigned l, unsigned m) const {
  if (l >= stirling2.size() || m > l) return BigInt(0);
  return stirling2[l][m];
}

BellStirlingTable bell_stirling(unsigned max_index) {
  BellStirlingTable table;
  table.stirling2.resize(max_index + 1);
  table.stirling2[0] = {BigInt(1)};
  for (unsigned l = 0; l < max_index; ++l) {
    const auto& row = table.stirling2[l];
    auto& next = table.stirling2[l + 1];
    next.assign(l + 2, BigInt(0));
    for (unsigned m = 1; m <= l + 1; ++m) {
      BigInt same = m <= l ? row[m] : BigInt(0);
      next[m] = same * m + row[m - 1];
    }
  }

  table.bell.reserve(max_index + 1);
  for (const auto& row : table.stirling2) {
    BigInt total(0);
    for (const auto& s : row) total += s;
    table.bell.push_back(total);
  }

  for (unsigned l = 0; l < max_index; ++l) {
    BigInt weighted(0);
    for (unsigned m = 0; m <= l; ++m) weighted += table.stirling2[l][m] * m;
    if (weighted != table.bell[l + 1] - table.bell[l]) {
      throw InternalConsistencyError("sum_m m{l m} != B_{l+1} - B_l at l=" + std::to_string(l));
    }
  }
  return table;
}

BigInt bell_number(unsigned l) {
  static std::mutex mutex;
  static BellStirlingTable table = bell_stirling(16);
  std::lock_guard lock(mutex);
  if (l > table.max_index()) table = bell_stirling(l + 8);
  return table.bell[l];
}

}  // namespace blockmerge
