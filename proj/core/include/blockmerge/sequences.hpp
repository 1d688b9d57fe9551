#pragma once

#include "blockmerge/exact_rational.hpp"

namespace blockmerge::seq {

// Memoized, append-only tables shared by every module. Lookups extend the
// table under an exclusive lock and read under a shared one; returned
// references stay valid for the life of the process.

/// n!
const BigInt& factorial(unsigned n);

/// A(n) from A(n) = n A(n-1) + (n-1) A(n-2), A(0) = A(1) = 1.
const BigInt& a_number(unsigned n);

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
const ExactRational& harmonic(unsigned n);

/// C(n, k); zero when k > n.
BigInt binomial(unsigned n, unsigned k);

/// A(n,k) = C(n-1, k-1) A(k-1) for 1 <= k <= n; the number of permutations
/// of [n] with exactly k maximal blocks.
BigInt a_nk(unsigned n, unsigned k);

/// Double factorial k!! with 0!! = (-1)!! = 1.
BigInt double_factorial(long k);

}  // namespace blockmerge::seq
