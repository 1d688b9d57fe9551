#include "blockmerge/prob_row.hpp"

#include <stdexcept>

#include "blockmerge/errors.hpp"
#include "blockmerge/sequences.hpp"

namespace blockmerge {

ProbRow::ProbRow(unsigned n) : n_(n) {
  if (n == 0) throw std::invalid_argument("prob_row requires n >= 1");
  denominator_ = seq::factorial(n);
  counts_.reserve(n);
  prefix_counts_.reserve(n);
  BigInt running(0);
  for (unsigned k = 1; k <= n; ++k) {
    counts_.push_back(seq::a_nk(n, k));
    if (counts_.back() < 0) throw InternalConsistencyError("negative A(n,k)");
    running += counts_.back();
    prefix_counts_.push_back(running);
  }
  if (running != denominator_) {
    throw InternalConsistencyError("block-count law of n=" + std::to_string(n) + " does not sum to 1");
  }
  if (counts_.back() != seq::a_number(n - 1)) {
    throw InternalConsistencyError("A(n,n) != A(n-1) at n=" + std::to_string(n));
  }
}

ExactRational ProbRow::prob(unsigned k) const {
  if (k == 0 || k > n_) throw std::out_of_range("ProbRow::prob index");
  return make_rational(counts_[k - 1], denominator_);
}

ExactRational ProbRow::prefix(unsigned t) const {
  if (t == 0 || t > n_) throw std::out_of_range("ProbRow::prefix index");
  return make_rational(prefix_counts_[t - 1], denominator_);
}

std::vector<ExactRational> ProbRow::probs() const {
  std::vector<ExactRational> out;
  out.reserve(n_);
  for (unsigned k = 1; k <= n_; ++k) out.push_back(prob(k));
  return out;
}

std::vector<ExactRational> ProbRow::prefixes() const {
  std::vector<ExactRational> out;
  out.reserve(n_);
  for (unsigned t = 1; t <= n_; ++t) out.push_back(prefix(t));
  return out;
}

std::vector<double> ProbRow::probs_double() const {
  std::vector<double> out;
  out.reserve(n_);
  for (unsigned k = 1; k <= n_; ++k) out.push_back(to_double(prob(k)));
  return out;
}

}  // namespace blockmerge
