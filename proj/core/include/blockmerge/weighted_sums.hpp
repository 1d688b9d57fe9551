#pragma once

#include <string>
#include <vector>

#include "blockmerge/big_float.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/moments.hpp"

namespace blockmerge {

// Weighted sums over the block-count law q_nk = A(n,k)/n! built from the
// mean table. Exact overloads take ExactMeans, float overloads take a
// vector of MPFR means (entry n-1 holds mu_n).

/// sum_k q_nk (n-k)^ell1 (mu_n - mu_k)^ell2.
ExactRational weighted_moment_sum(unsigned n, unsigned ell1, unsigned ell2, const ExactMeans& means);
BigFloat weighted_moment_sum(unsigned n, unsigned ell1, unsigned ell2, const std::vector<BigFloat>& mu);

/// Every pair with ell1 + ell2 <= max_total at one n; out[ell1][ell2].
std::vector<std::vector<ExactRational>> weighted_moment_sweep(unsigned n, unsigned max_total,
                                                              const ExactMeans& means);
std::vector<std::vector<BigFloat>> weighted_moment_sweep(unsigned n, unsigned max_total,
                                                         const std::vector<BigFloat>& mu);

/// True iff sum_k q_nk (mu_n - mu_k) == 1 exactly (n >= 2).
bool first_bell_identity(unsigned n, const ExactMeans& means);

enum class WeightedVariant {
  /// sum q (n-k)^a (mu_n - mu_k)^b / k; target 0, error n |v|.
  k_inv,
  /// sum q k^a (mu_n - mu_k)^b; target B_b n^a, error |v - t| / n^{a-1}.
  k_pow,
  /// sum q k^a (1 + mu_k - mu_n)^b; target (sum_m C(b,m) (-1)^m B_m) n^a,
  /// error |v - t| / n^{a-1}.
  lm,
  /// sum q k^a (1 + mu_k - mu_n); target a n^{a-1}, error |v - t| / n^{a-2}.
  /// For a = 0 the value is exactly 0 and the error is |v|.
  l1,
};

std::string variant_name(WeightedVariant v);
/// "k_inv", "k_pow", "lm" or "l1"; anything else throws std::invalid_argument.
WeightedVariant parse_variant(const std::string& text);

template <class Scalar>
struct WeightedValue {
  Scalar value;
  Scalar target;
  double scaled_error = 0;
};

/// `a` and `b` are (ell1, ell2) for k_inv / k_pow and (L, M) for lm / l1
/// (b is ignored by l1).
WeightedValue<ExactRational> weighted_moment_sum_k(unsigned n, WeightedVariant v, unsigned a, unsigned b,
                                                   const ExactMeans& means);
WeightedValue<BigFloat> weighted_moment_sum_k(unsigned n, WeightedVariant v, unsigned a, unsigned b,
                                              const std::vector<BigFloat>& mu);

/// R_n(t) = sum_{k<=t} q_nk (1 + mu_k - mu_n) for t = 1..n.
std::vector<ExactRational> r_partial_sums(unsigned n, const ExactMeans& means);

struct WeightedMomentReport {
  unsigned ell1 = 0;
  unsigned ell2 = 0;
  unsigned n_from = 0;
  unsigned n_to = 0;
  /// B_{ell1 + ell2}.
  BigInt target;
  /// Values at n_from..n_to, rounded for reporting.
  std::vector<double> values;
  /// n |value - target|, from the unrounded value.
  std::vector<double> scaled_err;
  double sup_scaled_err = 0;
};

/// Reports for every pair with ell1 + ell2 <= max_total over [n_from, n_to].
/// Exact below or at `exact_limit`, MPFR at `bits` above it.
std::vector<WeightedMomentReport> weighted_moment_reports(unsigned n_from, unsigned n_to, unsigned max_total,
                                                          unsigned exact_limit,
                                                          mpfr_prec_t bits = BigFloat::kDefaultBits);

}  // namespace blockmerge
