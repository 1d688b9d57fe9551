#pragma once

#include <vector>

#include "blockmerge/big_float.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/mode.hpp"

namespace blockmerge {

/// xi_n solved from (1 - q_nn) xi_n = lambda_n + sum_{k<n} q_nk xi_k for
/// n > n0, with xi_1..xi_n0 given, plus the error diagnostics against
/// (M/(L+1)) n^{L+1}. All vectors are indexed by n-1.
template <class Scalar>
struct GenericRecurrenceRun {
  unsigned L = 0;
  Scalar M;
  unsigned n0 = 0;
  Mode mode;
  std::vector<Scalar> lambda;
  std::vector<Scalar> xi;
  /// xi_n - (M/(L+1)) n^{L+1}.
  std::vector<Scalar> eta;
  /// lambda_n - M n^L.
  std::vector<Scalar> delta;
  /// |eta_n| / sum_{j<=n} (|delta_j| + j^{L-1}).
  std::vector<double> ratio;
  /// n |eta_n - eta_{n-1}| when L = 0, |eta_n - eta_{n-1}| / (n^{L-1} log n)
  /// when L >= 1; zero at n = 1.
  std::vector<double> diff_scaled;
  /// xi_n / ((M/(L+1)) n^{L+1}); empty when M = 0.
  std::vector<double> trend;
  double sup_ratio = 0;
  double sup_diff_scaled = 0;
};

/// Throws std::invalid_argument when fewer than two initial values are
/// given, when lambda does not cover 1..n_max, or when M = 0 with L > 0.
template <class Scalar>
GenericRecurrenceRun<Scalar> generic_recurrence(unsigned L, const Scalar& M, const std::vector<Scalar>& lambda,
                                                const std::vector<Scalar>& initial, unsigned n_max,
                                                const Mode& mode);

extern template GenericRecurrenceRun<ExactRational> generic_recurrence(unsigned, const ExactRational&,
                                                                       const std::vector<ExactRational>&,
                                                                       const std::vector<ExactRational>&, unsigned,
                                                                       const Mode&);
extern template GenericRecurrenceRun<BigFloat> generic_recurrence(unsigned, const BigFloat&,
                                                                  const std::vector<BigFloat>&,
                                                                  const std::vector<BigFloat>&, unsigned,
                                                                  const Mode&);

}  // namespace blockmerge
