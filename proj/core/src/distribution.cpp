#include "blockmerge/distribution.hpp"

#include <string>

#include "blockmerge/prob_row.hpp"
#include "blockmerge/sequences.hpp"

namespace blockmerge {

namespace {

// coeff[k][j] = A(k,j) * n!/k!, so a step over denominator n! stays integral.
std::vector<std::vector<BigInt>> step_matrix(unsigned n) {
  std::vector<std::vector<BigInt>> out(n + 1);
  const BigInt& nf = seq::factorial(n);
  for (unsigned k = 2; k <= n; ++k) {
    const ProbRow row(k);
    const BigInt scale = nf / seq::factorial(k);
    out[k].resize(k + 1);
    for (unsigned j = 1; j <= k; ++j) out[k][j] = row.counts()[j - 1] * scale;
  }
  return out;
}

// P(X_k = m) * (n!)^m for k = 1..n, advanced one m at a time.
class ExactStepper {
 public:
  explicit ExactStepper(unsigned n) : n_(n), coeff_(step_matrix(n)), cur_(n + 1, BigInt(0)), next_(n + 1) {
    cur_[1] = 1;
  }

  // Returns the numerator of P(X_n = m) for the next m.
  const BigInt& advance() {
    next_[1] = 0;
    for (unsigned k = 2; k <= n_; ++k) {
      BigInt acc(0);
      for (unsigned j = 1; j <= k; ++j) acc += coeff_[k][j] * cur_[j];
      next_[k] = std::move(acc);
    }
    std::swap(cur_, next_);
    return cur_[n_];
  }

 private:
  unsigned n_;
  std::vector<std::vector<BigInt>> coeff_;
  std::vector<BigInt> cur_, next_;
};

}  // namespace

TruncatedPmf<ExactRational> exact_pmf(unsigned n, unsigned m_max) {
  if (n == 0 || m_max == 0) throw std::invalid_argument("exact_pmf needs n >= 1 and m_max >= 1");
  TruncatedPmf<ExactRational> out;
  out.n = n;
  out.m_max = m_max;
  out.mode = Mode::exact();
  if (n == 1) {
    out.pmf.assign(m_max, ExactRational(0));
    out.residual = 0;
    return out;
  }
  const BigInt& nf = seq::factorial(n);
  ExactStepper stepper(n);
  BigInt den(1), total(0);
  out.pmf.reserve(m_max);
  for (unsigned m = 1; m <= m_max; ++m) {
    const BigInt& num = stepper.advance();
    den *= nf;
    total = total * nf + num;
    out.pmf.push_back(make_rational(num, den));
  }
  out.residual = make_rational(den - total, den);
  return out;
}

TruncatedPmf<BigFloat> float_pmf(unsigned n, unsigned m_max, mpfr_prec_t bits) {
  if (n == 0 || m_max == 0) throw std::invalid_argument("float_pmf needs n >= 1 and m_max >= 1");
  TruncatedPmf<BigFloat> out;
  out.n = n;
  out.m_max = m_max;
  out.mode = Mode::bigfloat(bits);
  out.residual = BigFloat(bits);
  if (n == 1) {
    out.pmf.assign(m_max, BigFloat(bits));
    return out;
  }
  std::vector<std::vector<BigFloat>> q(n + 1);
  for (unsigned k = 2; k <= n; ++k) {
    const ProbRow row(k);
    for (unsigned j = 1; j <= k; ++j) q[k].emplace_back(row.prob(j), bits);
  }
  std::vector<BigFloat> cur(n + 1, BigFloat(bits)), next(n + 1, BigFloat(bits));
  cur[1] = BigFloat(1L, bits);
  BigFloat total(bits);
  for (unsigned m = 1; m <= m_max; ++m) {
    next[1] = BigFloat(bits);
    for (unsigned k = 2; k <= n; ++k) {
      BigFloat acc(bits);
      for (unsigned j = 1; j <= k; ++j) acc += q[k][j - 1] * cur[j];
      next[k] = std::move(acc);
    }
    std::swap(cur, next);
    out.pmf.push_back(cur[n]);
    total += cur[n];
  }
  out.residual = BigFloat(1L, bits) - total;
  return out;
}

unsigned auto_m_max(unsigned n, const ExactRational& threshold) {
  if (n == 0) throw std::invalid_argument("auto_m_max needs n >= 1");
  if (n == 1) return 1;
  const BigInt& nf = seq::factorial(n);
  ExactStepper stepper(n);
  BigInt den(1), total(0);
  for (unsigned m = 1;; ++m) {
    const BigInt& num = stepper.advance();
    den *= nf;
    total = total * nf + num;
    // (den - total)/den < p/q  <=>  (den - total) q < p den
    if ((den - total) * threshold.get_den() < threshold.get_num() * den) return m;
  }
}

ExactRational survival_mass(unsigned n, unsigned m) {
  if (n == 0) throw std::invalid_argument("survival_mass needs n >= 1");
  if (n == 1) return ExactRational(0);
  const auto coeff = step_matrix(n);
  std::vector<BigInt> w(n + 1, BigInt(0)), next(n + 1);
  w[n] = 1;
  BigInt den(1);
  const BigInt& nf = seq::factorial(n);
  for (unsigned step = 0; step < m; ++step) {
    for (auto& v : next) v = 0;
    for (unsigned k = 2; k <= n; ++k) {
      if (w[k] == 0) continue;
      for (unsigned j = 2; j <= k; ++j) next[j] += w[k] * coeff[k][j];
    }
    std::swap(w, next);
    den *= nf;
  }
  BigInt alive(0);
  for (unsigned k = 2; k <= n; ++k) alive += w[k];
  return make_rational(alive, den);
}

ExactRational self_loop_max(unsigned n) {
  if (n < 2) throw std::invalid_argument("self_loop_max needs n >= 2");
  ExactRational best(0);
  for (unsigned j = 2; j <= n; ++j) {
    ExactRational stay = make_rational(seq::a_number(j - 1), seq::factorial(j));
    if (stay > best) best = stay;
  }
  return best;
}

ExactRational tail_bound(unsigned n, unsigned m) {
  const ExactRational rho = self_loop_max(n);
  ExactRational total(0);
  for (unsigned d = 0; d <= n - 2 && d <= m; ++d) {
    total += ExactRational(seq::binomial(m, d)) * pow(rho, m - d);
  }
  return total;
}

std::vector<MomentInterval<ExactRational>> pmf_moments(const TruncatedPmf<ExactRational>& pmf, unsigned order) {
  std::vector<MomentInterval<ExactRational>> out;
  if (pmf.terminal()) {
    out.push_back({ExactRational(1), ExactRational(1)});
    for (unsigned j = 1; j <= order; ++j) out.push_back({ExactRational(0), ExactRational(0)});
    return out;
  }
  const unsigned n = pmf.n;
  const unsigned big_m = pmf.m_max;
  const ExactRational rho = self_loop_max(n);

  for (unsigned j = 0; j <= order; ++j) {
    ExactRational lower(0);
    for (unsigned m = 1; m <= big_m; ++m) {
      if (sgn(pmf.pmf[m - 1]) != 0) lower += ExactRational(pow(BigInt(m), j)) * pmf.pmf[m - 1];
    }
    if (j == 0) {
      out.push_back({lower, ExactRational(1)});
      continue;
    }
    // sum_{m>M} m^j P(X >= m) <= sum_d sum_{m>=M+1} m^j C(m-1,d) rho^{m-1-d}; the
    // term ratio in m is ((m+1)/m)^j m/(m-d) rho, largest at m = M+1.
    ExactRational tail(0);
    const unsigned first = big_m + 1;
    for (unsigned d = 0; d <= n - 2; ++d) {
      if (d >= first) {
        throw TailBoundError("m_max=" + std::to_string(big_m) + " too small for the tail bound; raise m_max");
      }
      const ExactRational ratio = pow(ExactRational(first + 1, first), j) * make_rational(BigInt(first), BigInt(first - d)) * rho;
      if (ratio >= 1) {
        throw TailBoundError("tail bound does not close at order " + std::to_string(j) + " with m_max=" +
                             std::to_string(big_m) + "; raise m_max");
      }
      const ExactRational lead =
          ExactRational(pow(BigInt(first), j) * seq::binomial(first - 1, d)) * pow(rho, first - 1 - d);
      tail += lead / (ExactRational(1) - ratio);
    }
    out.push_back({lower, lower + tail});
  }
  return out;
}

}  // namespace blockmerge
