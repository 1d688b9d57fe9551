#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace blockmerge {

/// Number of maximal blocks of `perm`, a permutation of {1..s}: runs of
/// adjacent positions holding consecutive increasing integers. Equals s minus
/// the number of positions i with perm[i+1] == perm[i] + 1.
///
/// Throws std::invalid_argument if `perm` is not a permutation of {1..s}.
unsigned block_count(std::span<const unsigned> perm);

/// Same as block_count without validating the input.
unsigned block_count_unchecked(std::span<const unsigned> perm);

/// Merges each block into its first integer and relabels the survivors by
/// rank, giving a permutation of {1..block_count(perm)}.
/// (1,7,5,6,8,10,9,2,3,4) becomes (1,4,3,5,7,6,2).
std::vector<unsigned> merge_blocks(std::span<const unsigned> perm);

/// In-place variant used by the simulator; `scratch` is resized as needed.
void merge_blocks_in_place(std::vector<unsigned>& perm, std::vector<unsigned>& scratch);

/// Histogram of block_count over all s! permutations of [s]; entry k-1 counts
/// permutations with k blocks. Intended for small s (s! enumerations).
std::vector<std::uint64_t> enumerate_block_counts(unsigned s);

}  // namespace blockmerge
