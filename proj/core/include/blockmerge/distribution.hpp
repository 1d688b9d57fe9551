#pragma once

#include <stdexcept>
#include <vector>

#include "blockmerge/big_float.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/mode.hpp"

namespace blockmerge {

/// P(X_n = m) for 1 <= m <= m_max plus the mass beyond m_max.
///
/// X_1 = 0 is the terminal record: for n = 1 the vector is all zero, the
/// residual is zero, and P(X_1 = 0) = 1 lives outside the vector.
template <class Scalar>
struct TruncatedPmf {
  unsigned n = 0;
  unsigned m_max = 0;
  Mode mode;
  /// pmf[m-1] = P(X_n = m).
  std::vector<Scalar> pmf;
  /// 1 - sum(pmf).
  Scalar residual;

  bool terminal() const { return n == 1; }
};

/// Forward DP over steps, P(X_k = m) = sum_j q_kj P(X_j = m-1), on integer
/// numerators over (n!)^m. Keeps two step layers only.
TruncatedPmf<ExactRational> exact_pmf(unsigned n, unsigned m_max);
TruncatedPmf<BigFloat> float_pmf(unsigned n, unsigned m_max, mpfr_prec_t bits = BigFloat::kDefaultBits);

/// Smallest m_max whose exact residual is below `threshold` (default 1e-30).
unsigned auto_m_max(unsigned n, const ExactRational& threshold = ExactRational(1) / ExactRational(pow(BigInt(10), 30)));

/// P(X_n > m) from the occupation law of the size chain after m steps;
/// independent of exact_pmf, so it cross-checks the residual.
ExactRational survival_mass(unsigned n, unsigned m);

/// max_{2<=j<=n} A(j-1)/j!, the largest self-loop probability among the
/// non-absorbed sizes. Equals 1/2 for every n >= 2.
ExactRational self_loop_max(unsigned n);

/// Certified P(X_n > m) <= sum_{d=0}^{n-2} C(m,d) rho^{m-d}: a surviving path
/// makes at most n-2 strict size decreases, and every other step is a
/// self-loop of probability at most rho. Exact for n = 2. Requires n >= 2.
ExactRational tail_bound(unsigned n, unsigned m);

template <class Scalar>
struct MomentInterval {
  Scalar lower;
  Scalar upper;
};

/// Thrown when the tail bound cannot close at the requested order.
class TailBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// [lower, upper] brackets for E[X_n^j], j = 0..order. Lower is the
/// truncated sum; upper adds sum_{m>m_max} m^j P(X_n >= m) bounded through
/// tail_bound with a geometric-ratio closing. Throws TailBoundError when that
/// ratio is not below 1 (m_max too small for the order).
std::vector<MomentInterval<ExactRational>> pmf_moments(const TruncatedPmf<ExactRational>& pmf, unsigned order);

}  // namespace blockmerge
