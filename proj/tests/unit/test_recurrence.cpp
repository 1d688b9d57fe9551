#include <doctest.h>

#include <cmath>

#include "blockmerge/bell_stirling.hpp"
#include "blockmerge/generic_recurrence.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/sequences.hpp"
#include "blockmerge/weighted_sums.hpp"
#include "oracles.hpp"

using namespace blockmerge;

TEST_CASE("mean anchors") {
  const auto mu = exact_means(6);
  CHECK(mu[0] == 0);
  CHECK(mu[1] == 2);
  CHECK(mu[2] == ExactRational(10, 3));
  const ExactMeans m(6);
  for (unsigned n = 1; n <= 6; ++n) {
    const auto num = m.level_numerators(n);
    for (unsigned k = 1; k <= n; ++k) CHECK(ExactRational(num[k - 1]) / ExactRational(m.level_denominator(n)) == m.mu(k));
  }
}

TEST_CASE("X_2 is geometric(1/2)") {
  const auto t = exact_moment_table(2, 6);
  // E[G^j] for P(G = m) = 2^{-m}: 1, 2, 6, 26, 150, 1082, 9366
  const long raw[] = {1, 2, 6, 26, 150, 1082, 9366};
  for (unsigned j = 0; j <= 6; ++j) CHECK(t.raw_moment(2, j) == raw[j]);
  CHECK(t.central_moment(2, 2) == 2);
  CHECK(t.central_moment(2, 3) == 6);
  CHECK(t.central_moment(2, 4) == 38);
}

TEST_CASE("moments agree with the absorbing-chain linear solve") {
  const unsigned n = 7, order = 5;
  const auto chain = oracle::chain_raw_moments(n, order);
  const auto t = exact_moment_table(n, order);
  for (unsigned s = 1; s <= n; ++s) {
    for (unsigned j = 0; j <= order; ++j) {
      CAPTURE(s);
      CAPTURE(j);
      CHECK(t.raw_moment(s, j) == chain[s][j]);
    }
  }
}

TEST_CASE("integer engine matches the plain rational DP") {
  const auto fast = exact_moment_table(18, 8);
  const auto slow = reference_exact_moment_table(18, 8);
  CHECK(fast.mu == slow.mu);
  CHECK(fast.raw == slow.raw);
  CHECK(fast.central == slow.central);
  CHECK(fast.eps_m == slow.eps_m);
}

TEST_CASE("float engine tracks the exact one") {
  const auto e = exact_moment_table(40, 6);
  const auto f = float_moment_table(40, 6, 256);
  for (unsigned n = 2; n <= 40; ++n) {
    for (unsigned m = 2; m <= 6; ++m) {
      const double x = to_double(e.central_moment(n, m));
      CHECK(f.central_moment(n, m).to_double() == doctest::Approx(x).epsilon(1e-12));
    }
  }
  CHECK(float_means(40, 256)[39].to_double() == doctest::Approx(to_double(e.mean(40))).epsilon(1e-15));
}

TEST_CASE("central moment is a binomial transform of raw moments") {
  // independent transform in the test, on the exact table
  const auto t = exact_moment_table(12, 6);
  for (unsigned n = 1; n <= 12; ++n) {
    for (unsigned m = 0; m <= 6; ++m) {
      ExactRational c(0);
      for (unsigned i = 0; i <= m; ++i) {
        c += ExactRational(seq::binomial(m, i)) * t.raw_moment(n, i) * pow(-t.mean(n), m - i);
      }
      CHECK(c == t.central_moment(n, m));
    }
  }
}

TEST_CASE("main terms") {
  CHECK(central_main_term(2, 7) == 7);
  CHECK(central_main_term(3, 7) == 14);
  CHECK(central_main_term(4, 7) == 147);
  CHECK(central_main_term(5, 3) == 180);  // (2/3) 2 15 n^2
  CHECK(central_main_term(6, 2) == 120);  // 15 n^3
}

TEST_CASE("eps diagnostics and mean bounds") {
  const ExactMeans means(61);
  const auto rep = eps_mean_diagnostics(means);
  CHECK(rep.checked_through == 60);
  CHECK(rep.holds());
  CHECK(rep.eps[0] == -1);
  CHECK(rep.eps[1] == -1);
  for (unsigned n = 2; n <= 61; ++n) {
    CHECK(mean_sandwich(n, means.mu(n)));
    CHECK(mu_gap_bounds(n, means));
  }
  CHECK_FALSE(mean_sandwich(4, ExactRational(7)));
}

TEST_CASE("error series shapes") {
  const auto t = float_moment_table(60, 4);
  const auto s = central_error_terms(t);
  REQUIRE(s.size() == 3);
  CHECK(s[0].m == 2);
  CHECK(s[0].points.front().n == 2);
  CHECK(s[0].points.back().n == 60);
  CHECK(std::isfinite(s[2].sup_scaled_diff));
}

TEST_CASE("first-moment Bell identity and weighted sums") {
  const ExactMeans means(40);
  for (unsigned n = 2; n <= 40; ++n) CHECK(first_bell_identity(n, means));
  const auto q = oracle::block_law(7);
  ExactRational direct(0);
  for (unsigned k = 1; k <= 7; ++k) {
    direct += q[7][k] * pow(ExactRational(7 - k), 2) * pow(means.mu(7) - means.mu(k), 1);
  }
  CHECK(weighted_moment_sum(7, 2, 1, means) == direct);
  const auto sweep = weighted_moment_sweep(7, 3, means);
  CHECK(sweep[2][1] == direct);
  const auto fm = float_means(40);
  CHECK(weighted_moment_sum(30, 1, 1, fm).to_double() ==
        doctest::Approx(to_double(weighted_moment_sum(30, 1, 1, means))).epsilon(1e-14));
}

TEST_CASE("weighted reports approach Bell numbers") {
  const auto reps = weighted_moment_reports(10, 60, 3, 150);
  REQUIRE(!reps.empty());
  for (const auto& r : reps) {
    CAPTURE(r.ell1);
    CAPTURE(r.ell2);
    CHECK(r.target == bell_number(r.ell1 + r.ell2));
    CHECK(std::isfinite(r.sup_scaled_err));
    CHECK(r.sup_scaled_err < 200);
  }
}

TEST_CASE("weighted variants") {
  const ExactMeans means(50);
  CHECK(parse_variant("lm") == WeightedVariant::lm);
  CHECK_THROWS(parse_variant("nope"));
  // l1 with a = 0 is identically zero
  CHECK(weighted_moment_sum_k(30, WeightedVariant::l1, 0, 0, means).value == 0);
  const auto r = r_partial_sums(20, means);
  CHECK(r.back() == 0);  // R_n(n) = 1 - 1 by the first Bell identity
}

TEST_CASE("generic recurrence reproduces the mean") {
  const unsigned n = 40;
  std::vector<ExactRational> ones(n, ExactRational(1));
  const auto run = generic_recurrence<ExactRational>(0, ExactRational(1), ones, {0, 2}, n, Mode::exact());
  const auto mu = exact_means(n);
  CHECK(run.xi == mu);
  const auto zero = generic_recurrence<ExactRational>(0, ExactRational(1), std::vector<ExactRational>(n, 0),
                                                      {0, 0}, n, Mode::exact());
  for (const auto& x : zero.xi) CHECK(x == 0);
}

TEST_CASE("generic recurrence with lambda_n = n") {
  const unsigned n = 300;
  std::vector<BigFloat> lam;
  for (unsigned i = 1; i <= n; ++i) lam.emplace_back(static_cast<long>(i), 256);
  const auto run = generic_recurrence<BigFloat>(1, BigFloat(1L, 256), lam, {BigFloat(0L, 256), BigFloat(0L, 256)}, n,
                                                Mode::bigfloat());
  // xi_n / (n^2/2) -> 1 with an O(log n / n) error
  CHECK(std::abs(run.trend.back() - 1) < 0.05);
  CHECK(std::abs(run.trend.back() - 1) < std::abs(run.trend[49] - 1));
}

TEST_CASE("generic recurrence rejects bad input") {
  std::vector<ExactRational> lam(5, 1);
  CHECK_THROWS_AS(generic_recurrence<ExactRational>(0, 1, lam, {0}, 5, Mode::exact()), std::invalid_argument);
  CHECK_THROWS_AS(generic_recurrence<ExactRational>(0, 1, lam, {0, 2}, 9, Mode::exact()), std::invalid_argument);
  CHECK_THROWS_AS(generic_recurrence<ExactRational>(1, 0, lam, {0, 2}, 5, Mode::exact()), std::invalid_argument);
}

TEST_CASE("exact and float recurrence agree") {
  const unsigned n = 60;
  std::vector<ExactRational> lam;
  std::vector<BigFloat> flam;
  for (unsigned i = 1; i <= n; ++i) {
    lam.push_back(ExactRational(BigInt(i) * i, 3));
    flam.emplace_back(lam.back(), 256);
  }
  const auto e = generic_recurrence<ExactRational>(2, ExactRational(1, 3), lam, {1, 1}, n, Mode::exact());
  const auto f = generic_recurrence<BigFloat>(2, BigFloat(ExactRational(1, 3), 256), flam,
                                              {BigFloat(1L, 256), BigFloat(1L, 256)}, n, Mode::bigfloat());
  for (unsigned i = 0; i < n; ++i) CHECK(f.xi[i].to_double() == doctest::Approx(to_double(e.xi[i])).epsilon(1e-14));
}
