#include "blockmerge/generic_recurrence.hpp"

#include <cmath>
#include <stdexcept>

#include "blockmerge/prob_row.hpp"
#include "blockmerge/scalar.hpp"

namespace blockmerge {

template <class Scalar>
GenericRecurrenceRun<Scalar> generic_recurrence(unsigned L, const Scalar& M, const std::vector<Scalar>& lambda,
                                                const std::vector<Scalar>& initial, unsigned n_max,
                                                const Mode& mode) {
  using Ops = ScalarOps<Scalar>;
  const mpfr_prec_t bits = working_bits(mode);
  const Scalar zero = Ops::from(0L, bits);
  if (initial.size() < 2) throw std::invalid_argument("generic recurrence needs at least two initial values");
  if (n_max == 0) throw std::invalid_argument("generic recurrence needs n_max >= 1");
  if (lambda.size() < n_max) throw std::invalid_argument("lambda table shorter than n_max");
  if (L > 0 && M == zero) throw std::invalid_argument("M must be nonzero when L > 0");

  GenericRecurrenceRun<Scalar> run;
  run.L = L;
  run.M = M;
  run.n0 = static_cast<unsigned>(initial.size());
  run.mode = mode;
  run.lambda.assign(lambda.begin(), lambda.begin() + n_max);

  const Scalar one = Ops::from(1L, bits);
  for (unsigned n = 1; n <= n_max; ++n) {
    if (n <= run.n0) {
      run.xi.push_back(initial[n - 1]);
      continue;
    }
    const ProbRow row(n);
    Scalar acc = run.lambda[n - 1];
    for (unsigned k = 1; k < n; ++k) acc += Ops::from(row.prob(k), bits) * run.xi[k - 1];
    run.xi.push_back(acc / (one - Ops::from(row.prob(n), bits)));
  }

  const Scalar coeff = M / Ops::from(static_cast<long>(L) + 1, bits);
  Scalar denom_sum = zero;
  for (unsigned n = 1; n <= n_max; ++n) {
    const Scalar nn = Ops::from(static_cast<long>(n), bits);
    const Scalar main = coeff * pow(nn, L + 1);
    run.eta.push_back(run.xi[n - 1] - main);
    run.delta.push_back(run.lambda[n - 1] - M * pow(nn, L));

    // j^{L-1}, which is 1/j when L = 0.
    const Scalar j_term = L == 0 ? one / nn : pow(nn, L - 1);
    denom_sum += Ops::abs(run.delta.back()) + j_term;
    const double r = Ops::to_double(Ops::abs(run.eta.back()) / denom_sum);
    run.ratio.push_back(r);
    run.sup_ratio = std::max(run.sup_ratio, r);

    double d = 0;
    if (n >= 2) {
      const double jump = Ops::to_double(Ops::abs(run.eta[n - 1] - run.eta[n - 2]));
      d = L == 0 ? jump * n : jump / (std::pow(double(n), double(L) - 1.0) * std::log(double(n)));
    }
    run.diff_scaled.push_back(d);
    run.sup_diff_scaled = std::max(run.sup_diff_scaled, d);

    if (!(M == zero)) run.trend.push_back(Ops::to_double(run.xi[n - 1] / main));
  }
  return run;
}

template GenericRecurrenceRun<ExactRational> generic_recurrence(unsigned, const ExactRational&,
                                                                const std::vector<ExactRational>&,
                                                                const std::vector<ExactRational>&, unsigned,
                                                                const Mode&);
template GenericRecurrenceRun<BigFloat> generic_recurrence(unsigned, const BigFloat&, const std::vector<BigFloat>&,
                                                           const std::vector<BigFloat>&, unsigned, const Mode&);

}  // namespace blockmerge
