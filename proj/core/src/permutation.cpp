#include "blockmerge/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace blockmerge {

unsigned block_count_unchecked(std::span<const unsigned> perm) {
  if (perm.empty()) return 0;
  unsigned adjacent = 0;
  for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
    if (perm[i + 1] == perm[i] + 1) ++adjacent;
  }
  return static_cast<unsigned>(perm.size()) - adjacent;
}

unsigned block_count(std::span<const unsigned> perm) {
  const std::size_t s = perm.size();
  if (s == 0) throw std::invalid_argument("block_count: empty permutation");
  std::vector<bool> seen(s + 1, false);
  for (unsigned v : perm) {
    if (v == 0 || v > s) throw std::invalid_argument("block_count: value out of range 1..s");
    if (seen[v]) throw std::invalid_argument("block_count: duplicate value");
    seen[v] = true;
  }
  return block_count_unchecked(perm);
}

void merge_blocks_in_place(std::vector<unsigned>& perm, std::vector<unsigned>& scratch) {
  // Keep block heads, then relabel: head value v becomes its rank among heads.
  std::size_t heads = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i == 0 || perm[i] != perm[i - 1] + 1) perm[heads++] = perm[i];
  }
  const std::size_t s_old = perm.size();
  perm.resize(heads);
  scratch.assign(s_old + 1, 0);
  for (unsigned v : perm) scratch[v] = 1;
  unsigned rank = 0;
  for (std::size_t v = 1; v <= s_old; ++v) {
    if (scratch[v]) scratch[v] = ++rank;
  }
  for (auto& v : perm) v = scratch[v];
}

std::vector<unsigned> merge_blocks(std::span<const unsigned> perm) {
  block_count(perm);
  std::vector<unsigned> out(perm.begin(), perm.end());
  std::vector<unsigned> scratch;
  merge_blocks_in_place(out, scratch);
  return out;
}

std::vector<std::uint64_t> enumerate_block_counts(unsigned s) {
  if (s == 0) throw std::invalid_argument("enumerate_block_counts requires s >= 1");
  if (s > 12) throw std::invalid_argument("enumerate_block_counts: s! too large to enumerate");
  std::vector<unsigned> perm(s);
  std::iota(perm.begin(), perm.end(), 1u);
  std::vector<std::uint64_t> histogram(s, 0);
  do {
    ++histogram[block_count_unchecked(perm) - 1];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return histogram;
}

}  // namespace blockmerge
