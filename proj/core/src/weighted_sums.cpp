#include "blockmerge/weighted_sums.hpp"

#include <cmath>
#include <stdexcept>

#include "blockmerge/bell_stirling.hpp"
#include "blockmerge/prob_row.hpp"
#include "blockmerge/sequences.hpp"

namespace blockmerge {

namespace {

BigInt upow(unsigned long base, unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

BigInt lcm_upto(unsigned n) {
  BigInt out(1);
  for (unsigned k = 2; k <= n; ++k) mpz_lcm_ui(out.get_mpz_t(), out.get_mpz_t(), k);
  return out;
}

void check_n(unsigned n, unsigned available) {
  if (n == 0 || n > available) throw std::out_of_range("weighted sum needs 1 <= n <= table size");
}

// Integer view of one level: mu_k = num[k-1] / den for k <= n.
struct Level {
  unsigned n;
  BigInt den;
  std::vector<BigInt> num;
  ProbRow row;

  Level(unsigned n_, const ExactMeans& means)
      : n(n_), den(means.level_denominator(n_)), num(means.level_numerators(n_)), row(n_) {}

  // D (mu_n - mu_k) or D (1 + mu_k - mu_n).
  BigInt gap(unsigned k) const { return num[n - 1] - num[k - 1]; }
  BigInt shifted(unsigned k) const { return den - gap(k); }
};

enum class Weight { n_minus_k, k_power, n_minus_k_over_k };

// sum_k q_nk w(k) g_k^e as an exact rational, g from the level view.
template <class G>
ExactRational level_sum(const Level& lv, Weight w, unsigned a, unsigned e, G g) {
  const unsigned n = lv.n;
  const BigInt lcm = w == Weight::n_minus_k_over_k ? lcm_upto(n) : BigInt(1);
  BigInt total(0);
  for (unsigned k = 1; k <= n; ++k) {
    BigInt term = lv.row.counts()[k - 1] * pow(g(k), e);
    switch (w) {
      case Weight::n_minus_k: term *= upow(n - k, a); break;
      case Weight::k_power: term *= upow(k, a); break;
      case Weight::n_minus_k_over_k: term *= upow(n - k, a) * (lcm / k); break;
    }
    total += term;
  }
  return make_rational(total, lcm * lv.row.denominator() * pow(lv.den, e));
}

template <class G>
BigFloat float_sum(unsigned n, Weight w, unsigned a, unsigned e, const std::vector<BigFloat>& mu, G g) {
  const mpfr_prec_t bits = mu.front().bits();
  const ProbRow row(n);
  BigFloat total(bits);
  for (unsigned k = 1; k <= n; ++k) {
    BigFloat term(row.prob(k), bits);
    term *= pow(g(k), e);
    switch (w) {
      case Weight::n_minus_k: term *= BigFloat(upow(n - k, a), bits); break;
      case Weight::k_power: term *= BigFloat(upow(k, a), bits); break;
      case Weight::n_minus_k_over_k:
        term *= BigFloat(upow(n - k, a), bits);
        term /= BigFloat(static_cast<long>(k), bits);
        break;
    }
    total += term;
  }
  return total;
}

ExactRational lm_coefficient(unsigned b) {
  BigInt c(0);
  for (unsigned m = 0; m <= b; ++m) {
    const BigInt t = seq::binomial(b, m) * bell_number(m);
    if (m % 2 == 0) c += t; else c -= t;
  }
  return ExactRational(c);
}

struct Target {
  ExactRational value;
  // Error divisor as a power of n (may be negative).
  int scale_power;
};

Target target_for(unsigned n, WeightedVariant v, unsigned a, unsigned b) {
  auto npow = [&](int p) -> ExactRational {
    if (p >= 0) return ExactRational(upow(n, p));
    return ExactRational(1) / ExactRational(upow(n, -p));
  };
  switch (v) {
    case WeightedVariant::k_inv: return {ExactRational(0), -1};
    case WeightedVariant::k_pow:
      return {ExactRational(bell_number(b)) * npow(static_cast<int>(a)), static_cast<int>(a) - 1};
    case WeightedVariant::lm: return {lm_coefficient(b) * npow(static_cast<int>(a)), static_cast<int>(a) - 1};
    case WeightedVariant::l1:
      if (a == 0) return {ExactRational(0), 0};
      return {ExactRational(a) * npow(static_cast<int>(a) - 1), static_cast<int>(a) - 2};
  }
  throw std::invalid_argument("unknown weighted variant");
}

double scaled(double abs_err, unsigned n, int power) { return abs_err / std::pow(double(n), double(power)); }

}  // namespace

ExactRational weighted_moment_sum(unsigned n, unsigned ell1, unsigned ell2, const ExactMeans& means) {
  check_n(n, means.n_max());
  const Level lv(n, means);
  return level_sum(lv, Weight::n_minus_k, ell1, ell2, [&](unsigned k) { return lv.gap(k); });
}

BigFloat weighted_moment_sum(unsigned n, unsigned ell1, unsigned ell2, const std::vector<BigFloat>& mu) {
  check_n(n, static_cast<unsigned>(mu.size()));
  return float_sum(n, Weight::n_minus_k, ell1, ell2, mu, [&](unsigned k) { return mu[n - 1] - mu[k - 1]; });
}

std::vector<std::vector<ExactRational>> weighted_moment_sweep(unsigned n, unsigned max_total,
                                                              const ExactMeans& means) {
  check_n(n, means.n_max());
  const Level lv(n, means);
  std::vector<std::vector<BigInt>> acc(max_total + 1);
  for (unsigned l1 = 0; l1 <= max_total; ++l1) acc[l1].assign(max_total + 1 - l1, BigInt(0));

  BigInt gap_pow, w;
  for (unsigned k = 1; k <= n; ++k) {
    const BigInt gap = lv.gap(k);
    gap_pow = lv.row.counts()[k - 1];
    for (unsigned l2 = 0; l2 <= max_total; ++l2) {
      w = gap_pow;
      for (unsigned l1 = 0; l1 + l2 <= max_total; ++l1) {
        acc[l1][l2] += w;
        w *= n - k;
      }
      gap_pow *= gap;
    }
  }
  std::vector<std::vector<ExactRational>> out(max_total + 1);
  BigInt den = lv.row.denominator();
  std::vector<BigInt> dens;
  for (unsigned l2 = 0; l2 <= max_total; ++l2) {
    dens.push_back(den);
    den *= lv.den;
  }
  for (unsigned l1 = 0; l1 <= max_total; ++l1) {
    for (unsigned l2 = 0; l1 + l2 <= max_total; ++l2) out[l1].push_back(make_rational(acc[l1][l2], dens[l2]));
  }
  return out;
}

std::vector<std::vector<BigFloat>> weighted_moment_sweep(unsigned n, unsigned max_total,
                                                         const std::vector<BigFloat>& mu) {
  check_n(n, static_cast<unsigned>(mu.size()));
  const mpfr_prec_t bits = mu.front().bits();
  const ProbRow row(n);
  std::vector<std::vector<BigFloat>> out(max_total + 1);
  for (unsigned l1 = 0; l1 <= max_total; ++l1) out[l1].assign(max_total + 1 - l1, BigFloat(bits));
  for (unsigned k = 1; k <= n; ++k) {
    const BigFloat gap = mu[n - 1] - mu[k - 1];
    BigFloat gap_pow(row.prob(k), bits);
    const BigFloat width(static_cast<long>(n - k), bits);
    for (unsigned l2 = 0; l2 <= max_total; ++l2) {
      BigFloat w = gap_pow;
      for (unsigned l1 = 0; l1 + l2 <= max_total; ++l1) {
        out[l1][l2] += w;
        w *= width;
      }
      gap_pow *= gap;
    }
  }
  return out;
}

bool first_bell_identity(unsigned n, const ExactMeans& means) {
  if (n < 2) throw std::invalid_argument("first_bell_identity requires n >= 2");
  check_n(n, means.n_max());
  const Level lv(n, means);
  BigInt total(0);
  for (unsigned k = 1; k <= n; ++k) total += lv.row.counts()[k - 1] * lv.gap(k);
  return total == lv.row.denominator() * lv.den;
}

std::string variant_name(WeightedVariant v) {
  switch (v) {
    case WeightedVariant::k_inv: return "k_inv";
    case WeightedVariant::k_pow: return "k_pow";
    case WeightedVariant::lm: return "lm";
    case WeightedVariant::l1: return "l1";
  }
  return "?";
}

WeightedVariant parse_variant(const std::string& text) {
  if (text == "k_inv") return WeightedVariant::k_inv;
  if (text == "k_pow") return WeightedVariant::k_pow;
  if (text == "lm") return WeightedVariant::lm;
  if (text == "l1") return WeightedVariant::l1;
  throw std::invalid_argument("unknown weighted variant '" + text + "'");
}

WeightedValue<ExactRational> weighted_moment_sum_k(unsigned n, WeightedVariant v, unsigned a, unsigned b,
                                                   const ExactMeans& means) {
  check_n(n, means.n_max());
  const Level lv(n, means);
  ExactRational value;
  switch (v) {
    case WeightedVariant::k_inv:
      value = level_sum(lv, Weight::n_minus_k_over_k, a, b, [&](unsigned k) { return lv.gap(k); });
      break;
    case WeightedVariant::k_pow:
      value = level_sum(lv, Weight::k_power, a, b, [&](unsigned k) { return lv.gap(k); });
      break;
    case WeightedVariant::lm:
      value = level_sum(lv, Weight::k_power, a, b, [&](unsigned k) { return lv.shifted(k); });
      break;
    case WeightedVariant::l1:
      value = level_sum(lv, Weight::k_power, a, 1, [&](unsigned k) { return lv.shifted(k); });
      break;
  }
  const Target t = target_for(n, v, a, b);
  const ExactRational err = abs(value - t.value);
  return {value, t.value, scaled(to_double(err), n, t.scale_power)};
}

WeightedValue<BigFloat> weighted_moment_sum_k(unsigned n, WeightedVariant v, unsigned a, unsigned b,
                                              const std::vector<BigFloat>& mu) {
  check_n(n, static_cast<unsigned>(mu.size()));
  const mpfr_prec_t bits = mu.front().bits();
  const BigFloat one(1L, bits);
  auto gap = [&](unsigned k) { return mu[n - 1] - mu[k - 1]; };
  auto shifted = [&](unsigned k) { return one + mu[k - 1] - mu[n - 1]; };
  BigFloat value(bits);
  switch (v) {
    case WeightedVariant::k_inv: value = float_sum(n, Weight::n_minus_k_over_k, a, b, mu, gap); break;
    case WeightedVariant::k_pow: value = float_sum(n, Weight::k_power, a, b, mu, gap); break;
    case WeightedVariant::lm: value = float_sum(n, Weight::k_power, a, b, mu, shifted); break;
    case WeightedVariant::l1: value = float_sum(n, Weight::k_power, a, 1, mu, shifted); break;
  }
  const Target t = target_for(n, v, a, b);
  const BigFloat target(t.value, bits);
  return {value, target, scaled(abs(value - target).to_double(), n, t.scale_power)};
}

std::vector<ExactRational> r_partial_sums(unsigned n, const ExactMeans& means) {
  check_n(n, means.n_max());
  const Level lv(n, means);
  std::vector<ExactRational> out;
  out.reserve(n);
  BigInt running(0);
  const BigInt den = lv.row.denominator() * lv.den;
  for (unsigned t = 1; t <= n; ++t) {
    running += lv.row.counts()[t - 1] * lv.shifted(t);
    out.push_back(make_rational(running, den));
  }
  return out;
}

std::vector<WeightedMomentReport> weighted_moment_reports(unsigned n_from, unsigned n_to, unsigned max_total,
                                                          unsigned exact_limit, mpfr_prec_t bits) {
  if (n_from == 0 || n_to < n_from) throw std::invalid_argument("weighted_moment_reports needs 1 <= n_from <= n_to");
  std::vector<WeightedMomentReport> out;
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned l1 = 0; l1 <= max_total; ++l1) {
    for (unsigned l2 = 0; l1 + l2 <= max_total; ++l2) {
      pairs.emplace_back(l1, l2);
      WeightedMomentReport r;
      r.ell1 = l1;
      r.ell2 = l2;
      r.n_from = n_from;
      r.n_to = n_to;
      r.target = bell_number(l1 + l2);
      out.push_back(std::move(r));
    }
  }

  auto record = [&](unsigned n, std::size_t idx, double value, double err) {
    auto& r = out[idx];
    r.values.push_back(value);
    r.scaled_err.push_back(err * n);
    r.sup_scaled_err = std::max(r.sup_scaled_err, err * n);
  };

  const unsigned exact_top = std::min(n_to, exact_limit);
  if (n_from <= exact_top) {
    const ExactMeans means(exact_top);
    for (unsigned n = n_from; n <= exact_top; ++n) {
      const auto sweep = weighted_moment_sweep(n, max_total, means);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const ExactRational& v = sweep[pairs[i].first][pairs[i].second];
        record(n, i, to_double(v), to_double(ExactRational(abs(v - ExactRational(out[i].target)))));
      }
    }
  }
  const unsigned float_from = std::max(n_from, exact_top + 1);
  if (float_from <= n_to) {
    const auto mu = float_means(n_to, bits);
    for (unsigned n = float_from; n <= n_to; ++n) {
      const auto sweep = weighted_moment_sweep(n, max_total, mu);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const BigFloat& v = sweep[pairs[i].first][pairs[i].second];
        record(n, i, v.to_double(), abs(v - BigFloat(out[i].target, bits)).to_double());
      }
    }
  }
  return out;
}

}  // namespace blockmerge
