#include "blockmerge/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "blockmerge/errors.hpp"
#include "blockmerge/prob_row.hpp"
#include "blockmerge/scalar.hpp"
#include "blockmerge/sequences.hpp"

namespace blockmerge {

namespace {

// k! - A(k-1), the level factor; c_1 is pinned to 1 (X_1 = 0 needs no solve).
BigInt level_factor(unsigned k) {
  if (k <= 1) return BigInt(1);
  return seq::factorial(k) - seq::a_number(k - 1);
}

BigInt exact_quotient(const BigInt& num, const BigInt& den, const char* what, unsigned n) {
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw InternalConsistencyError(std::string(what) + " not integral at n=" + std::to_string(n));
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::vector<BigInt> powers(const BigInt& base, unsigned top) {
  std::vector<BigInt> out(top + 1);
  out[0] = 1;
  for (unsigned j = 1; j <= top; ++j) out[j] = out[j - 1] * base;
  return out;
}

template <class Scalar>
void fill_errors(MomentTable<Scalar>& t) {
  const mpfr_prec_t bits = working_bits(t.mode);
  t.eps_mean.clear();
  t.eps_m.assign(t.n_max, {});
  for (unsigned n = 1; n <= t.n_max; ++n) {
    const ExactRational shift = ExactRational(n) + seq::harmonic(n - 1);
    t.eps_mean.push_back(t.mu[n - 1] - ScalarOps<Scalar>::from(shift, bits));
    auto& row = t.eps_m[n - 1];
    row.assign(t.order + 1, ScalarOps<Scalar>::from(0L, bits));
    for (unsigned m = 2; m <= t.order; ++m) {
      row[m] = t.central[n - 1][m] - ScalarOps<Scalar>::from(ExactRational(central_main_term(m, n)), bits);
    }
  }
}

}  // namespace

ExactMeans::ExactMeans(unsigned n_max) {
  if (n_max == 0) throw std::invalid_argument("mean_values requires n_max >= 1");
  mu_.reserve(n_max);
  level_den_.reserve(n_max);
  std::vector<BigInt> numer{BigInt(0)};
  BigInt den(1);
  mu_.emplace_back(0);
  level_den_.push_back(den);

  for (unsigned n = 2; n <= n_max; ++n) {
    const BigInt c = level_factor(n);
    BigInt x = seq::factorial(n) * den;
    for (unsigned k = 1; k < n; ++k) x += seq::a_nk(n, k) * numer[k - 1];
    den *= c;
    for (auto& v : numer) v *= c;
    numer.push_back(x);
    mu_.push_back(make_rational(x, den));
    level_den_.push_back(den);
  }
}

std::vector<BigInt> ExactMeans::level_numerators(unsigned n) const {
  const BigInt& d = level_denominator(n);
  std::vector<BigInt> out;
  out.reserve(n);
  for (unsigned k = 1; k <= n; ++k) {
    const ExactRational& q = mu_[k - 1];
    out.push_back(q.get_num() * exact_quotient(d, q.get_den(), "level denominator", n));
  }
  return out;
}

std::vector<ExactRational> exact_means(unsigned n_max) { return ExactMeans(n_max).values(); }

BigInt central_main_term(unsigned m, unsigned n) {
  if (m < 2) throw std::invalid_argument("central_main_term requires m >= 2");
  const unsigned big_m = m / 2;
  const BigInt n_pow = pow(BigInt(n), big_m);
  if (m % 2 == 0) return seq::double_factorial(2 * static_cast<long>(big_m) - 1) * n_pow;
  BigInt c = 2 * big_m * seq::double_factorial(2 * static_cast<long>(big_m) + 1);
  return exact_quotient(c, BigInt(3), "odd main term", m) * n_pow;
}

MomentTable<ExactRational> exact_moment_table(unsigned n_max, unsigned order) {
  if (n_max == 0) throw std::invalid_argument("moment table requires n_max >= 1");
  MomentTable<ExactRational> out;
  out.n_max = n_max;
  out.order = order;
  out.mode = Mode::exact();

  // raw_num[k-1][j] = D^j E[X_k^j], cen_num[k-1][m] = D^m E[(X_k - mu_k)^m],
  // both at the current level.
  std::vector<std::vector<BigInt>> raw_num, cen_num;
  BigInt den(1);
  std::vector<BigInt> den_pow;

  // Means are needed even at order 0.
  const unsigned work_order = std::max(order, 1u);
  den_pow = powers(den, work_order);

  auto emit = [&](unsigned n) {
    std::vector<ExactRational> r, c;
    r.reserve(order + 1);
    c.reserve(order + 1);
    for (unsigned j = 0; j <= order; ++j) {
      r.push_back(make_rational(raw_num[n - 1][j], den_pow[j]));
      c.push_back(make_rational(cen_num[n - 1][j], den_pow[j]));
    }
    out.mu.push_back(make_rational(raw_num[n - 1][1], den));
    out.raw.push_back(std::move(r));
    out.central.push_back(std::move(c));
  };

  // n = 1: X_1 = 0.
  {
    std::vector<BigInt> unit(work_order + 1, BigInt(0));
    unit[0] = 1;
    raw_num.push_back(unit);
    cen_num.push_back(unit);
  }
  emit(1);

  std::vector<BigInt> sums(work_order + 1);
  for (unsigned n = 2; n <= n_max; ++n) {
    const ProbRow row(n);
    const auto& a = row.counts();
    const BigInt& a_nn = a[n - 1];
    const BigInt c = level_factor(n);

    // Move everything to level n.
    const std::vector<BigInt> c_pow = powers(c, work_order);
    for (unsigned k = 1; k < n; ++k) {
      for (unsigned j = 1; j <= work_order; ++j) {
        raw_num[k - 1][j] *= c_pow[j];
        cen_num[k - 1][j] *= c_pow[j];
      }
    }
    den *= c;
    den_pow = powers(den, work_order);

    for (unsigned i = 0; i <= work_order; ++i) {
      sums[i] = 0;
      for (unsigned k = 1; k < n; ++k) sums[i] += a[k - 1] * raw_num[k - 1][i];
    }

    std::vector<BigInt> t(work_order + 1);
    t[0] = 1;
    for (unsigned j = 1; j <= work_order; ++j) {
      BigInt self(0), rest(0);
      for (unsigned i = 0; i < j; ++i) self += seq::binomial(j, i) * t[i] * den_pow[j - i];
      for (unsigned i = 0; i <= j; ++i) rest += seq::binomial(j, i) * den_pow[j - i] * sums[i];
      t[j] = exact_quotient(a_nn * self + rest, c, "raw moment numerator", n);
    }

    // Route 1: binomial transform about the mean.
    const BigInt neg_mean = -t[1];
    std::vector<BigInt> z1(work_order + 1);
    {
      const std::vector<BigInt> nm_pow = powers(neg_mean, work_order);
      for (unsigned m = 0; m <= work_order; ++m) {
        BigInt acc(0);
        for (unsigned i = 0; i <= m; ++i) acc += seq::binomial(m, i) * t[i] * nm_pow[m - i];
        z1[m] = acc;
      }
    }

    // Route 2: the central-moment recurrence with d_k = 1 + mu_k - mu_n.
    // Per k the bracket sum_l C(m,l) Z_k^{(m-l)} d_k^l is run by Horner in d_k.
    std::vector<BigInt> d(n - 1);
    BigInt first = a_nn * den;
    for (unsigned k = 1; k < n; ++k) {
      d[k - 1] = den + raw_num[k - 1][1] - t[1];
      first += a[k - 1] * d[k - 1];
    }
    if (first != 0) {
      throw InternalConsistencyError("sum_k q_nk (1 + mu_k - mu_n) != 0 at n=" + std::to_string(n));
    }

    std::vector<BigInt> z2(work_order + 1);
    z2[0] = 1;
    z2[1] = 0;
    BigInt horner, coeff;
    for (unsigned m = 2; m <= work_order; ++m) {
      BigInt acc(0);
      for (unsigned k = 1; k < n; ++k) {
        const auto& z = cen_num[k - 1];
        horner = z[0];
        for (unsigned l = m; l-- > 0;) {
          horner *= d[k - 1];
          coeff = seq::binomial(m, l) * z[m - l];
          horner += coeff;
        }
        acc += a[k - 1] * horner;
      }
      // k = n: d_n = 1, so d_n^l scales to D^l.
      BigInt self(0);
      for (unsigned l = 1; l <= m; ++l) self += seq::binomial(m, l) * z2[m - l] * den_pow[l];
      acc += a_nn * self;
      z2[m] = exact_quotient(acc, c, "central moment numerator", n);
    }

    for (unsigned m = 0; m <= work_order; ++m) {
      if (z1[m] != z2[m]) {
        throw InternalConsistencyError("central moment routes disagree at n=" + std::to_string(n) +
                                       ", m=" + std::to_string(m));
      }
    }

    out.route_checks += work_order + 1;
    raw_num.push_back(std::move(t));
    cen_num.push_back(std::move(z2));
    emit(n);
  }

  fill_errors(out);
  return out;
}

namespace {

template <class Scalar>
MomentTable<Scalar> reference_table(unsigned n_max, unsigned order, const Mode& mode) {
  if (n_max == 0) throw std::invalid_argument("moment table requires n_max >= 1");
  using Ops = ScalarOps<Scalar>;
  const mpfr_prec_t bits = working_bits(mode);
  const unsigned work_order = std::max(order, 1u);
  const Scalar zero = Ops::from(0L, bits);
  const Scalar one = Ops::from(1L, bits);

  MomentTable<Scalar> out;
  out.n_max = n_max;
  out.order = order;
  out.mode = mode;

  std::vector<std::vector<Scalar>> raw, cen;
  {
    std::vector<Scalar> unit(work_order + 1, zero);
    unit[0] = one;
    raw.push_back(unit);
    cen.push_back(unit);
  }

  auto binom = [&](unsigned n, unsigned k) { return Ops::from(ExactRational(seq::binomial(n, k)), bits); };

  for (unsigned n = 2; n <= n_max; ++n) {
    const ProbRow row(n);
    std::vector<Scalar> q;
    q.reserve(n);
    for (unsigned k = 1; k <= n; ++k) q.push_back(Ops::from(row.prob(k), bits));
    const Scalar stay = one - q[n - 1];

    std::vector<Scalar> t(work_order + 1, zero);
    t[0] = one;
    for (unsigned j = 1; j <= work_order; ++j) {
      Scalar acc = zero;
      for (unsigned i = 0; i < j; ++i) acc += q[n - 1] * binom(j, i) * t[i];
      for (unsigned k = 1; k < n; ++k) {
        Scalar inner = zero;
        for (unsigned i = 0; i <= j; ++i) inner += binom(j, i) * raw[k - 1][i];
        acc += q[k - 1] * inner;
      }
      t[j] = acc / stay;
    }

    const Scalar mean = t[1];
    std::vector<Scalar> z1(work_order + 1, zero);
    for (unsigned m = 0; m <= work_order; ++m) {
      Scalar acc = zero;
      for (unsigned i = 0; i <= m; ++i) acc += binom(m, i) * t[i] * pow(-mean, m - i);
      z1[m] = acc;
    }

    std::vector<Scalar> d;
    d.reserve(n);
    for (unsigned k = 1; k < n; ++k) d.push_back(one + raw[k - 1][1] - mean);
    d.push_back(one);

    std::vector<Scalar> z2(work_order + 1, zero);
    z2[0] = one;
    for (unsigned m = 2; m <= work_order; ++m) {
      Scalar acc = zero;
      for (unsigned k = 1; k < n; ++k) acc += q[k - 1] * cen[k - 1][m];
      for (unsigned l = 1; l <= m; ++l) {
        Scalar inner = zero;
        for (unsigned k = 1; k <= n; ++k) {
          const Scalar& lower = k < n ? cen[k - 1][m - l] : z2[m - l];
          inner += q[k - 1] * lower * pow(d[k - 1], l);
        }
        acc += binom(m, l) * inner;
      }
      z2[m] = acc / stay;
    }

    for (unsigned m = 2; m <= work_order; ++m) {
      bool agree;
      if constexpr (Ops::exact) {
        agree = z1[m] == z2[m];
      } else {
        // Route 1 cancels down from E[X^m]; scale the tolerance by it.
        Scalar scale = Ops::abs(t[m]);
        const Scalar tol = scale * Ops::from(ExactRational(1), bits) / pow(Scalar(2L, bits), static_cast<unsigned long>(bits / 2));
        agree = Ops::abs(z1[m] - z2[m]) <= tol;
      }
      if (!agree) {
        throw InternalConsistencyError("central moment routes disagree at n=" + std::to_string(n) +
                                       ", m=" + std::to_string(m));
      }
    }
    if constexpr (Ops::exact) {
      if (z1[1] != zero) throw InternalConsistencyError("first central moment nonzero");
    }
    out.route_checks += work_order - 1;

    // the recurrence route avoids the cancellation in the transform
    raw.push_back(std::move(t));
    cen.push_back(std::move(z2));
  }

  for (unsigned n = 1; n <= n_max; ++n) {
    out.mu.push_back(raw[n - 1][1]);
    raw[n - 1].resize(order + 1, zero);
    cen[n - 1].resize(order + 1, zero);
  }
  out.raw = std::move(raw);
  out.central = std::move(cen);
  fill_errors(out);
  return out;
}

}  // namespace

MomentTable<BigFloat> float_moment_table(unsigned n_max, unsigned order, mpfr_prec_t bits) {
  return reference_table<BigFloat>(n_max, order, Mode::bigfloat(bits));
}

MomentTable<ExactRational> reference_exact_moment_table(unsigned n_max, unsigned order) {
  return reference_table<ExactRational>(n_max, order, Mode::exact());
}

std::vector<BigFloat> float_means(unsigned n_max, mpfr_prec_t bits) {
  return float_moment_table(n_max, 1, bits).mu;
}

EpsMeanReport eps_mean_diagnostics(const ExactMeans& means) {
  EpsMeanReport out;
  const unsigned n_max = means.n_max();
  for (unsigned n = 1; n <= n_max; ++n) {
    out.eps.push_back(means.mu(n) - ExactRational(n) - seq::harmonic(n - 1));
  }
  for (unsigned n = 1; n < n_max; ++n) out.diffs.push_back(out.eps[n - 1] - out.eps[n]);
  out.checked_through = n_max >= 3 ? std::min(n_max - 1, 200u) : 0;
  for (unsigned n = 2; n <= out.checked_through; ++n) {
    const ExactRational& diff = out.diffs[n - 1];
    if (!(diff > 0 && diff < ExactRational(1, static_cast<unsigned long>(n) * n))) {
      out.first_violation = n;
      break;
    }
  }
  return out;
}

bool mu_gap_bounds(unsigned n, const ExactMeans& means) {
  if (n == 0 || n > means.n_max()) throw std::out_of_range("mu_gap_bounds needs 1 <= n <= n_max");
  const ExactRational& mu_n = means.mu(n);
  for (unsigned k = 1; k <= n; ++k) {
    const ExactRational gap = mu_n - means.mu(k);
    const ExactRational width(n - k);
    if (gap < width) return false;
    if (gap > width * (ExactRational(1) + ExactRational(1, k))) return false;
  }
  return true;
}

bool mean_sandwich(unsigned n, const ExactRational& mu_n) {
  const ExactRational excess = mu_n - ExactRational(n);
  return excess >= 0 && excess * excess <= ExactRational(n);
}

template <class Scalar>
std::vector<ErrorTermSeries> central_error_terms(const MomentTable<Scalar>& table, unsigned n_from) {
  using Ops = ScalarOps<Scalar>;
  n_from = std::max(n_from, 2u);
  std::vector<ErrorTermSeries> out;
  for (unsigned m = 2; m <= table.order; ++m) {
    ErrorTermSeries series;
    series.m = m;
    for (unsigned n = n_from; n <= table.n_max; ++n) {
      ErrorTermPoint p;
      p.n = n;
      p.eps = Ops::to_double(table.eps_m[n - 1][m]);
      if (n > n_from) {
        const double diff = std::fabs(Ops::to_double(table.eps_m[n - 1][m] - table.eps_m[n - 2][m]));
        if (m <= 3) {
          p.scaled_diff = diff * n;
        } else {
          p.scaled_diff = diff / (std::pow(double(n), double(m / 2) - 2.0) * std::log(double(n)));
        }
        series.sup_scaled_diff = std::max(series.sup_scaled_diff, p.scaled_diff);
      }
      series.points.push_back(p);
    }
    out.push_back(std::move(series));
  }
  return out;
}

template std::vector<ErrorTermSeries> central_error_terms(const MomentTable<ExactRational>&, unsigned);
template std::vector<ErrorTermSeries> central_error_terms(const MomentTable<BigFloat>&, unsigned);

}  // namespace blockmerge
