#pragma once

#include <vector>

#include "blockmerge/exact_rational.hpp"

namespace blockmerge {

/// Law of the block count Y_n of a uniform permutation of [n]:
/// P(Y_n = k) = A(n,k) / n!, together with its prefix sums S_n(t).
///
/// Values are stored as integer counts over the shared denominator n!;
/// `prob` and `prefix` hand out reduced rationals.
class ProbRow {
 public:
  /// Builds the row and checks that the counts sum to n!, that the prefix
  /// is non-decreasing, and that A(n,n) = A(n-1). Throws
  /// std::invalid_argument for n == 0.
  explicit ProbRow(unsigned n);

  unsigned n() const { return n_; }
  const BigInt& denominator() const { return denominator_; }
  /// counts()[k-1] = A(n,k).
  const std::vector<BigInt>& counts() const { return counts_; }
  /// prefix_counts()[t-1] = A(n,1) + ... + A(n,t).
  const std::vector<BigInt>& prefix_counts() const { return prefix_counts_; }

  /// P(Y_n = k), 1 <= k <= n.
  ExactRational prob(unsigned k) const;
  /// S_n(t), 1 <= t <= n.
  ExactRational prefix(unsigned t) const;

  std::vector<ExactRational> probs() const;
  std::vector<ExactRational> prefixes() const;

  /// Probabilities rounded to double, for samplers.
  std::vector<double> probs_double() const;

 private:
  unsigned n_;
  BigInt denominator_;
  std::vector<BigInt> counts_;
  std::vector<BigInt> prefix_counts_;
};

inline ProbRow prob_row(unsigned n) { return ProbRow(n); }

}  // namespace blockmerge
