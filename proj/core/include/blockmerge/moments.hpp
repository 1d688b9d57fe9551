#pragma once

#include <vector>

#include "blockmerge/big_float.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/mode.hpp"

namespace blockmerge {

/// Means mu_1..mu_{n_max} of the absorption time X_n, exactly.
///
/// Internally every mu_k is an integer numerator over the level denominator
/// D_n = prod_{k<=n} (k! - A(k-1)); the mean recurrence then needs no
/// rational arithmetic at all.
class ExactMeans {
 public:
  explicit ExactMeans(unsigned n_max);

  unsigned n_max() const { return static_cast<unsigned>(mu_.size()); }
  /// mu_n in lowest terms, 1 <= n <= n_max.
  const ExactRational& mu(unsigned n) const { return mu_.at(n - 1); }
  const std::vector<ExactRational>& values() const { return mu_; }

  /// D_n.
  const BigInt& level_denominator(unsigned n) const { return level_den_.at(n - 1); }
  /// D_n * mu_k for k = 1..n; every entry is an integer.
  std::vector<BigInt> level_numerators(unsigned n) const;

 private:
  std::vector<ExactRational> mu_;
  std::vector<BigInt> level_den_;
};

/// mu_1..mu_{n_max}; entry n-1 holds mu_n.
std::vector<ExactRational> exact_means(unsigned n_max);
std::vector<BigFloat> float_means(unsigned n_max, mpfr_prec_t bits = BigFloat::kDefaultBits);

/// Leading term of E[(X_n - mu_n)^m] for m >= 2: (2M-1)!! n^M when m = 2M,
/// (2/3) M (2M+1)!! n^M when m = 2M+1. Always an integer.
BigInt central_main_term(unsigned m, unsigned n);

/// Raw and central moments of X_1..X_{n_max} up to `order`.
///
/// All vectors are indexed by n-1. raw[n-1][j] = E[X_n^j] and
/// central[n-1][m] = E[(X_n - mu_n)^m] for 0 <= j, m <= order.
/// eps_m[n-1][m] = central - central_main_term(m, n) for m >= 2 (zero below).
template <class Scalar>
struct MomentTable {
  unsigned n_max = 0;
  unsigned order = 0;
  Mode mode;
  std::vector<Scalar> mu;
  std::vector<std::vector<Scalar>> raw;
  std::vector<std::vector<Scalar>> central;
  /// mu_n - n - H_{n-1}.
  std::vector<Scalar> eps_mean;
  std::vector<std::vector<Scalar>> eps_m;
  /// Number of (n, m) pairs where both central-moment routes were computed
  /// and compared. `central` holds the recurrence route.
  unsigned long route_checks = 0;

  const Scalar& mean(unsigned n) const { return mu.at(n - 1); }
  const Scalar& raw_moment(unsigned n, unsigned j) const { return raw.at(n - 1).at(j); }
  const Scalar& central_moment(unsigned n, unsigned m) const { return central.at(n - 1).at(m); }
};

/// Exact table. Central moments are produced twice, by the binomial
/// transform of raw moments and by the central-moment recurrence, on scaled
/// integers; any disagreement throws InternalConsistencyError.
MomentTable<ExactRational> exact_moment_table(unsigned n_max, unsigned order);

/// MPFR table at `bits`. Both central routes are run; they must agree to a
/// relative 2^{-bits/2} or InternalConsistencyError is thrown.
MomentTable<BigFloat> float_moment_table(unsigned n_max, unsigned order,
                                         mpfr_prec_t bits = BigFloat::kDefaultBits);

/// Plain DP in the scalar type with no integer scaling. Slow in exact mode
/// (every step is a rational operation); kept as the small-n oracle.
MomentTable<ExactRational> reference_exact_moment_table(unsigned n_max, unsigned order);

struct EpsMeanReport {
  /// eps[n-1] = mu_n - n - H_{n-1}.
  std::vector<ExactRational> eps;
  /// diffs[n-1] = eps_n - eps_{n+1}, for n = 1..n_max-1.
  std::vector<ExactRational> diffs;
  /// Largest n for which 0 < eps_n - eps_{n+1} < 1/n^2 was checked.
  unsigned checked_through = 0;
  /// First n in [2, checked_through] where the bracket fails, or 0.
  unsigned first_violation = 0;

  bool holds() const { return first_violation == 0; }
};

/// Needs exact means through n_max; the bracket is checked for
/// 2 <= n <= min(n_max - 1, 200).
EpsMeanReport eps_mean_diagnostics(const ExactMeans& means);

/// n - k <= mu_n - mu_k <= (n - k)(1 + 1/k) for every 1 <= k <= n.
bool mu_gap_bounds(unsigned n, const ExactMeans& means);

/// n <= mu_n <= n + sqrt(n), decided as mu_n - n >= 0 and (mu_n - n)^2 <= n.
bool mean_sandwich(unsigned n, const ExactRational& mu_n);

struct ErrorTermPoint {
  unsigned n = 0;
  double eps = 0;
  /// n |e_n - e_{n-1}| for m in {2, 3}; |e_n - e_{n-1}| / (n^{floor(m/2)-2} log n)
  /// for m >= 4. Zero at the first point of a series.
  double scaled_diff = 0;
};

struct ErrorTermSeries {
  unsigned m = 0;
  std::vector<ErrorTermPoint> points;
  /// Largest scaled_diff over the series.
  double sup_scaled_diff = 0;
};

/// One series per order 2..table.order, over n = n_from..n_max.
template <class Scalar>
std::vector<ErrorTermSeries> central_error_terms(const MomentTable<Scalar>& table, unsigned n_from = 2);

}  // namespace blockmerge
