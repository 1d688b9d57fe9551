#include "blockmerge/identities.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "blockmerge/bell_stirling.hpp"
#include "blockmerge/errors.hpp"
#include "blockmerge/prob_row.hpp"
#include "blockmerge/sequences.hpp"

namespace blockmerge {

namespace {

// 0^0 = 1.
BigInt int_pow(unsigned long base, unsigned long exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

RationalPolynomial shifted(const RationalPolynomial& p, unsigned power) {
  std::vector<ExactRational> coeffs(power, ExactRational(0));
  coeffs.insert(coeffs.end(), p.coeffs().begin(), p.coeffs().end());
  return RationalPolynomial(std::move(coeffs));
}

}  // namespace

ExactRational a_closed_form(unsigned n) {
  // (n+2)!/i! summed with alternating signs is an integer; one division left.
  BigInt total(0);
  BigInt falling(1);  // (n+2)!/i! for i running down from n+2
  for (long i = static_cast<long>(n) + 2; i >= 0; --i) {
    if (i % 2 == 0) total += falling; else total -= falling;
    if (i > 0) falling *= static_cast<unsigned long>(i);
  }
  return make_rational(total, BigInt(n + 1));
}

std::vector<BigInt> a_sequence(unsigned n_max) {
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    const BigInt& a = seq::a_number(n);
    if (ExactRational(a) != a_closed_form(n)) {
      throw InternalConsistencyError("A(" + std::to_string(n) + ") recurrence != closed form");
    }
    out.push_back(a);
  }
  return out;
}

FloorCheck a_floor_check(unsigned n, mpfr_prec_t start_bits, mpfr_prec_t cap_bits) {
  const BigInt scale = BigInt(n + 2) * seq::factorial(n);
  const auto magnitude = static_cast<mpfr_prec_t>(mpz_sizeinbase(scale.get_mpz_t(), 2));
  mpfr_prec_t bits = std::max<mpfr_prec_t>(start_bits, magnitude + 32);

  FloorCheck result;
  while (true) {
    const mpfr_prec_t working = std::min(bits, cap_bits);
    mpfr_t lo, hi;
    mpfr_inits2(working, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(lo, -1, MPFR_RNDN);
    mpfr_set_si(hi, -1, MPFR_RNDN);
    mpfr_exp(lo, lo, MPFR_RNDD);
    mpfr_exp(hi, hi, MPFR_RNDU);
    mpfr_mul_z(lo, lo, scale.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi, hi, scale.get_mpz_t(), MPFR_RNDU);
    mpfr_add_d(lo, lo, 0.5, MPFR_RNDD);
    mpfr_add_d(hi, hi, 0.5, MPFR_RNDU);
    BigInt floor_lo, floor_hi;
    mpfr_get_z(floor_lo.get_mpz_t(), lo, MPFR_RNDD);
    mpfr_get_z(floor_hi.get_mpz_t(), hi, MPFR_RNDD);
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));

    result.bits_used = working;
    if (floor_lo == floor_hi) {
      result.floor_value = floor_lo;
      result.status = floor_lo == seq::a_number(n) ? Certification::holds : Certification::fails;
      return result;
    }
    if (working >= cap_bits) {
      result.status = Certification::indeterminate;
      return result;
    }
    bits = working * 2;
  }
}

MomentIdentity nk_moment_identity(unsigned n, unsigned ell) {
  if (n == 0) throw std::invalid_argument("nk_moment_identity requires n >= 1");
  MomentIdentity out;
  out.n = n;
  out.ell = ell;

  BigInt numer(0);
  for (unsigned k = 1; k <= n; ++k) numer += seq::a_nk(n, k) * int_pow(n - k, ell);
  out.lhs = make_rational(numer, seq::factorial(n));

  const BellStirlingTable table = bell_stirling(ell + 1);
  out.rhs = ExactRational(table.bell[ell]) - make_rational(table.bell[ell + 1] - table.bell[ell], BigInt(n));

  ExactRational stirling(0);
  for (unsigned m = 0; m <= std::min(n - 1, ell); ++m) {
    stirling += make_rational(BigInt(n - m) * table.stirling(ell, m), BigInt(n));
  }
  out.stirling_form = stirling;
  if (out.stirling_form != out.lhs) {
    throw InternalConsistencyError("Stirling form of the (n-k)^l moment disagrees at n=" + std::to_string(n) +
                                   ", l=" + std::to_string(ell));
  }
  return out;
}

std::pair<RationalPolynomial, RationalPolynomial> z_polynomial_sides(unsigned n) {
  if (n == 0) throw std::invalid_argument("z_polynomial_identity requires n >= 1");
  const ProbRow row(n);
  std::vector<ExactRational> left(n + 1, ExactRational(0));
  for (unsigned k = 1; k <= n; ++k) left[k] = row.prob(k);

  RationalPolynomial right;
  for (unsigned m = 0; m < n; ++m) {
    ExactRational c = make_rational(BigInt(n - m), BigInt(n) * seq::factorial(m));
    right += shifted(RationalPolynomial::binomial_power(1, -1, m), n - m) * c;
  }
  return {RationalPolynomial(std::move(left)), right};
}

bool z_polynomial_identity(unsigned n) {
  auto [left, right] = z_polynomial_sides(n);
  return left == right;
}

std::pair<RationalPolynomial, RationalPolynomial> s_polynomial_sides(unsigned n) {
  if (n == 0) throw std::invalid_argument("s_polynomial_identity requires n >= 1");
  const ProbRow row(n);
  std::vector<ExactRational> left(n + 1, ExactRational(0));
  for (unsigned t = 1; t <= n; ++t) left[t] = row.prefix(t);

  RationalPolynomial right = RationalPolynomial::monomial(1, n);
  for (unsigned m = 1; m < n; ++m) {
    ExactRational c = make_rational(BigInt(n - m), BigInt(n) * seq::factorial(m));
    right += shifted(RationalPolynomial::binomial_power(1, -1, m - 1), n - m) * c;
  }
  return {RationalPolynomial(std::move(left)), right};
}

bool s_polynomial_identity(unsigned n) {
  auto [left, right] = s_polynomial_sides(n);
  return left == right;
}

SSumIdentities s_sum_identities(unsigned n) {
  if (n == 0) throw std::invalid_argument("s_sum_identities requires n >= 1");
  const ProbRow row(n);
  const BigInt& nfact = seq::factorial(n);
  SSumIdentities out;
  out.n = n;

  BigInt plain(0);
  ExactRational inv(0), inv2(0);
  for (unsigned t = 1; t <= n; ++t) {
    const BigInt& p = row.prefix_counts()[t - 1];
    plain += p;
    inv += make_rational(p, BigInt(t));
    inv2 += make_rational(p, BigInt(t) * t);
  }
  out.sum0 = make_rational(plain, nfact);
  out.sum_inv = inv / ExactRational(nfact);
  out.sum_inv2 = inv2 / ExactRational(nfact);

  out.rhs0 = ExactRational(2) - ExactRational(1, n);
  ExactRational rinv(1, n);
  ExactRational rinv2(1, static_cast<unsigned long>(n) * n);
  const ExactRational& h_n = seq::harmonic(n);
  for (unsigned m = 1; m < n; ++m) {
    const ExactRational tail = make_rational(seq::factorial(n - m), BigInt(m) * nfact);
    rinv += tail;
    rinv2 += make_rational(seq::factorial(n - m - 1), BigInt(n) * nfact);
    rinv2 += tail * (h_n - seq::harmonic(n - m));
  }
  out.rhs_inv = rinv;
  out.rhs_inv2 = rinv2;
  return out;
}

ExactRational s_weighted_power_sum(unsigned n, unsigned ell) {
  if (n == 0) throw std::invalid_argument("s_weighted_power_sum requires n >= 1");
  const ProbRow row(n);
  BigInt total(0);
  for (unsigned t = 1; t <= n; ++t) total += row.prefix_counts()[t - 1] * int_pow(t, ell);
  return make_rational(total, seq::factorial(n));
}

QWeightedSum q_weighted_sum(unsigned n, unsigned ell, double s, mpfr_prec_t bits) {
  if (n == 0) throw std::invalid_argument("q_weighted_sum requires n >= 1");
  const ProbRow row(n);
  const bool integral = s >= 0 && std::floor(s) == s;
  if (integral) {
    const auto power = static_cast<unsigned long>(s);
    BigInt total(0);
    for (unsigned k = 1; k <= n; ++k) total += row.counts()[k - 1] * int_pow(n - k, ell) * int_pow(k, power);
    ExactRational exact = make_rational(total, row.denominator());
    return {exact, BigFloat(exact, bits)};
  }
  const BigFloat sf(s, bits);
  BigFloat total(bits);
  for (unsigned k = 1; k <= n; ++k) {
    if (ell > 0 && k == n) continue;
    BigFloat term(make_rational(row.counts()[k - 1] * int_pow(n - k, ell), row.denominator()), bits);
    term *= exp(sf * log(BigFloat(static_cast<long>(k), bits)));
    total += term;
  }
  return {std::nullopt, total};
}

std::vector<ExactRational> egf_coefficients(unsigned count) {
  std::vector<ExactRational> out;
  out.reserve(count);
  for (unsigned n = 0; n < count; ++n) {
    ExactRational c(0);
    for (unsigned i = 0; i <= n; ++i) {
      ExactRational term = make_rational(BigInt(n - i + 1), seq::factorial(i));
      if (i % 2 == 0) c += term; else c -= term;
    }
    out.push_back(c);
  }
  return out;
}

bool egf_identity(unsigned count) {
  const auto coeffs = egf_coefficients(count);
  for (unsigned n = 0; n < count; ++n) {
    if (coeffs[n] != make_rational(seq::a_number(n), seq::factorial(n))) return false;
  }
  return true;
}

ExactRational s_penultimate(unsigned n) {
  if (n < 2) throw std::invalid_argument("s_penultimate requires n >= 2");
  const ProbRow row(n);
  return make_rational(row.prefix_counts()[n - 2], row.denominator());
}

ExactRational factorial_tail_sum(unsigned n) {
  ExactRational total(0);
  for (unsigned m = 2; m + 1 <= n; ++m) total += make_rational(seq::factorial(n - m), BigInt(m));
  return total / ExactRational(seq::factorial(n));
}

}  // namespace blockmerge

namespace blockmerge {

std::vector<BigInt> bell_triangle(unsigned max_index) {
  std::vector<BigInt> bell{BigInt(1)};
  std::vector<BigInt> row{BigInt(1)};
  while (bell.size() <= max_index) {
    std::vector<BigInt> next{row.back()};
    for (const auto& x : row) next.push_back(next.back() + x);
    bell.push_back(next.front());
    row = std::move(next);
  }
  bell.resize(max_index + 1);
  return bell;
}

std::vector<DobinskiCheck> dobinski_identities(unsigned max_ell) {
  const auto table = bell_stirling(max_ell + 1);
  const auto bell = bell_triangle(max_ell + 1);
  std::vector<DobinskiCheck> out;
  for (unsigned l = 0; l <= max_ell; ++l) {
    DobinskiCheck c;
    c.ell = l;
    BigInt sum(0), weighted(0);
    c.explicit_stirling = true;
    for (unsigned m = 0; m <= l; ++m) {
      const BigInt s = table.stirling(l, m);
      sum += s;
      weighted += s * m;
      // m! {l m} = sum_j (-1)^{m-j} C(m,j) j^l
      BigInt alt(0);
      for (unsigned j = 0; j <= m; ++j) {
        BigInt term = seq::binomial(m, j) * pow(BigInt(j), l);
        if ((m - j) % 2) alt -= term; else alt += term;
      }
      if (alt != s * seq::factorial(m)) c.explicit_stirling = false;
    }
    c.row_sum = sum == bell[l];
    c.weighted_sum = weighted == bell[l + 1] - bell[l];
    out.push_back(c);
  }
  return out;
}

}  // namespace blockmerge
