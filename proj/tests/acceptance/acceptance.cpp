// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Thresholds and seeds here are frozen; see README "Acceptance".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blockmerge/bell_stirling.hpp"
#include "blockmerge/clt.hpp"
#include "blockmerge/distribution.hpp"
#include "blockmerge/identities.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/prob_row.hpp"
#include "blockmerge/sequences.hpp"
#include "blockmerge/simulator.hpp"
#include "blockmerge/weighted_sums.hpp"
#include "oracles.hpp"

using namespace blockmerge;

namespace {

using Clock = std::chrono::steady_clock;

// Frozen from a reference run: sup over 10 <= n <= 300 and l1 + l2 <= 4 is 37
// (the (4, 0) row, which equals B_5 - B_4 at every n).
constexpr double kBellSup = 40;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "first failure: " << what << "; ";
    pass = false;
  }
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

// 1 ------------------------------------------------------------------------
void identity_suite(Outcome& o) {
  const auto t0 = Clock::now();
  unsigned long count = 0;
  for (unsigned n = 1; n <= 200; ++n) {
    BigInt total(0);
    for (unsigned k = 1; k <= n; ++k) total += seq::a_nk(n, k);
    o.require(total == seq::factorial(n) && ProbRow(n).prefix(n) == 1, "sum=1 at n=" + std::to_string(n));
    ++count;
  }
  for (unsigned ell = 0; ell <= 8; ++ell) {
    for (unsigned n = std::max(ell, 1u); n <= 200; ++n, ++count) {
      const auto id = nk_moment_identity(n, ell);
      o.require(id.lhs == id.rhs, "(n-k)^ell at n=" + std::to_string(n) + " ell=" + std::to_string(ell));
    }
  }
  for (unsigned n = 1; n <= 50; ++n, count += 2) {
    o.require(z_polynomial_identity(n), "z-gf at n=" + std::to_string(n));
    o.require(s_polynomial_identity(n), "S-gf at n=" + std::to_string(n));
  }
  for (unsigned n = 1; n <= 200; ++n, count += 3) {
    o.require(s_sum_identities(n).holds(), "S sums at n=" + std::to_string(n));
  }
  for (const auto& c : dobinski_identities(12)) {
    o.require(c.row_sum && c.weighted_sum, "Dobinski at ell=" + std::to_string(c.ell));
    count += 2;
  }
  for (unsigned n = 0; n <= 100; ++n, ++count) {
    o.require(a_closed_form(n) == seq::a_number(n), "A(n) closed form at n=" + std::to_string(n));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 120, "runtime " + fmt(secs) + " s");
  o.detail << count << " exact equalities in " << fmt(secs, 3) << " s (limit 120 s)";
}

// 2 ------------------------------------------------------------------------
void finite_bounds(Outcome& o) {
  const ExactRational lo(63, 100), hi(64, 100);
  for (unsigned n = 200; n <= 1000; ++n) {
    const ExactRational s = s_penultimate(n);
    o.require(s == 1 - make_rational(seq::a_number(n - 1), seq::factorial(n)), "S_n(n-1) routes at n=" + std::to_string(n));
    o.require(lo < s && s < hi, "0.63 < S_n(n-1) < 0.64 at n=" + std::to_string(n));
  }
  const ExactMeans means(300);
  const auto eps = eps_mean_diagnostics(means);
  o.require(eps.checked_through == 200, "eps bracket covers 2..200");
  for (unsigned n = 2; n <= 200; ++n) {
    const ExactRational& d = eps.diffs[n - 1];
    o.require(d > 0 && d < make_rational(BigInt(1), BigInt(n) * n), "eps bracket at n=" + std::to_string(n));
  }
  for (unsigned n = 2; n <= 300; ++n) o.require(mean_sandwich(n, means.mu(n)), "n <= mu_n <= n + sqrt n at n=" + std::to_string(n));
  o.detail << "S_n(n-1) for 200..1000, eps bracket 2..200, mean sandwich 2..300, all exact";
}

// 3 ------------------------------------------------------------------------
void moment_anchors(Outcome& o) {
  const auto t = exact_moment_table(3, 4);
  o.require(t.mean(2) == 2, "mu_2 = 2");
  o.require(t.central_moment(2, 2) == 2, "Var X_2 = 2");
  o.require(t.mean(3) == ExactRational(10, 3), "mu_3 = 10/3");
  // geometric(1/2) on {1, 2, ...}: E[G^j] = 1 + sum_{i<j} C(j,i) E[G^i]
  std::vector<BigInt> g{BigInt(1)};
  for (unsigned j = 1; j <= 4; ++j) {
    BigInt v(1);
    for (unsigned i = 0; i < j; ++i) v += seq::binomial(j, i) * g[i];
    g.push_back(v);
    o.require(t.raw_moment(2, j) == v, "E[X_2^" + std::to_string(j) + "]");
  }
  o.detail << "mu_2 = " << t.mean(2) << ", Var X_2 = " << t.central_moment(2, 2) << ", mu_3 = " << t.mean(3)
           << ", E[X_2^j] = 2, 6, 26, 150";
}

// 4 ------------------------------------------------------------------------
void route_equivalence(Outcome& o) {
  const auto t0 = Clock::now();
  const unsigned n_max = 120, order = 8;
  MomentTable<ExactRational> t;
  try {
    t = exact_moment_table(n_max, order);
  } catch (const std::exception& e) {
    o.require(false, e.what());
    return;
  }
  o.require(t.route_checks == (n_max - 1) * (order + 1), "engine compared every (n, m)");
  // the table holds the recurrence route; redo the binomial transform here
  unsigned compared = 0;
  for (unsigned n = 1; n <= n_max; ++n) {
    const ExactRational neg = -t.mean(n);
    for (unsigned m = 0; m <= order; ++m, ++compared) {
      ExactRational c(0);
      for (unsigned i = 0; i <= m; ++i) c += ExactRational(seq::binomial(m, i)) * t.raw_moment(n, i) * pow(neg, m - i);
      o.require(c == t.central_moment(n, m), "routes at n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  o.detail << compared << " (n, m) pairs equal, n <= 120, m <= 8, " << fmt(seconds_since(t0), 3) << " s";
}

// 5 ------------------------------------------------------------------------
void asymptotic_laws(Outcome& o) {
  const auto t0 = Clock::now();
  const unsigned n = 400;
  const auto t = float_moment_table(n, 4, 256);
  const double dn = n;
  const double r2 = t.central_moment(n, 2).to_double() / dn - 1;
  const double r3 = t.central_moment(n, 3).to_double() / (2 * dn) - 1;
  const double r4 = t.central_moment(n, 4).to_double() / (3 * dn * dn) - 1;
  o.require(std::abs(r2) < 0.05, "|Var/n - 1| = " + fmt(r2));
  o.require(std::abs(r3) < 0.10, "|c3/(2n) - 1| = " + fmt(r3));
  o.require(std::abs(r4) < 0.10, "|c4/(3n^2) - 1| = " + fmt(r4));
  const double secs = seconds_since(t0);
  o.require(secs < 600, "runtime");
  o.detail << "n=400 bigfloat(256): Var/n-1=" << fmt(r2) << " (<0.05), c3/2n-1=" << fmt(r3)
           << " (<0.10), c4/3n^2-1=" << fmt(r4) << " (<0.10), " << fmt(secs, 3) << " s";
}

// 6 ------------------------------------------------------------------------
void bell_convergence(Outcome& o) {
  const auto t0 = Clock::now();
  const ExactMeans means(300);
  for (unsigned n = 2; n <= 300; ++n) o.require(first_bell_identity(n, means), "sum q (mu_n - mu_k) = 1 at n=" + std::to_string(n));
  const auto reps = weighted_moment_reports(10, 300, 4, kExactDefaultLimit);
  double worst = 0;
  for (const auto& r : reps) {
    if (r.ell1 + r.ell2 == 0) continue;
    const std::string tag = "(" + std::to_string(r.ell1) + "," + std::to_string(r.ell2) + ")";
    o.require(std::isfinite(r.sup_scaled_err), "finite sup " + tag);
    // bounded: the upper half of the range stays within 10% of the lower half's sup
    const std::size_t half = r.scaled_err.size() / 2;
    double lower = 0, upper = 0;
    for (std::size_t i = 0; i < r.scaled_err.size(); ++i) {
      double& side = i < half ? lower : upper;
      side = std::max(side, r.scaled_err[i]);
    }
    o.require(upper <= 1.1 * lower + 1e-12, "non-growing n|err| " + tag + ": " + fmt(lower) + " -> " + fmt(upper));
    o.require(r.sup_scaled_err < kBellSup, "sup n|err| " + tag + " = " + fmt(r.sup_scaled_err));
    worst = std::max(worst, r.sup_scaled_err);
  }
  o.detail << "first identity exact for 2..300; sup n|err| over 10..300, l1+l2<=4: " << fmt(worst) << " (pinned < "
           << kBellSup << "), " << fmt(seconds_since(t0), 3) << " s";
}

// 7 ------------------------------------------------------------------------
void distribution_oracle(Outcome& o) {
  const auto t = exact_moment_table(12, 4);
  for (unsigned n = 2; n <= 12; ++n) {
    const auto p = exact_pmf(n, auto_m_max(n));
    const auto iv = pmf_moments(p, 4);
    for (unsigned j = 0; j <= 4; ++j) {
      o.require(iv[j].lower <= t.raw_moment(n, j) && t.raw_moment(n, j) <= iv[j].upper,
                "interval at n=" + std::to_string(n) + " j=" + std::to_string(j));
    }
  }
  unsigned matched = 0;
  for (unsigned n = 2; n <= 5; ++n) {
    const auto paths = oracle::path_pmf(n, 6);
    const auto p = exact_pmf(n, 6);
    for (unsigned m = 1; m <= 6; ++m, ++matched) {
      o.require(p.pmf[m - 1] == paths[m], "path enumeration at n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  o.detail << "intervals contain E[X_n^j] for n<=12, j<=4; " << matched << " path-enumerated probabilities equal";
}

// 8 ------------------------------------------------------------------------
void simulator_suite(Outcome& o) {
  const auto t0 = Clock::now();
  const auto q = oracle::block_law(8);
  const ChainSampler sampler(8);
  for (unsigned s = 2; s <= 8; ++s) {
    const auto h = oracle::block_histogram(s);
    for (unsigned k = 1; k <= s; ++k) {
      o.require(seq::a_nk(s, k) == BigInt(std::to_string(h[k])), "A(s,k) enumeration");
      o.require(std::abs(sampler.prob(s, k) - to_double(q[s][k])) <= 1e-15, "sampler law");
    }
  }

  double min_p = 1;
  for (unsigned n : {3u, 5u, 10u, 25u}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SimConfig cfg;
      cfg.n = n;
      cfg.samples = 50000;
      cfg.seed = seed;
      cfg.backend = Backend::size_chain;
      const auto chain = run(cfg);
      cfg.seed = seed + 1000;
      cfg.backend = Backend::full_permutation;
      const auto full = run(cfg);
      const double p = chi_square_two_sample(chain, full).p_value;
      min_p = std::min(min_p, p);
      o.require(p > 1e-4, "two-sample chi-square n=" + std::to_string(n) + " seed=" + std::to_string(seed));
    }
  }

  SimConfig cfg;
  cfg.n = 10;
  cfg.samples = 1000000;
  cfg.seed = 7;
  const auto big = run(cfg);
  const auto view = pmf_view(exact_pmf(10, std::max<unsigned>(auto_m_max(10), static_cast<unsigned>(big.max))));
  const double tv = tv_distance(big, view);
  o.require(tv < 0.005, "TV = " + fmt(tv));

  cfg.samples = 100000;
  cfg.workers = 1;
  const auto one = run(cfg);
  for (unsigned w : {2u, 4u, 7u}) {
    cfg.workers = w;
    o.require(run(cfg) == one, "worker invariance w=" + std::to_string(w));
  }
  o.detail << "block law s<=8 exact; min two-sample p over 80 runs " << fmt(min_p) << " (>1e-4); TV(n=10, 1e6) "
           << fmt(tv) << " (<0.005); workers 1/2/4/7 identical; " << fmt(seconds_since(t0), 3) << " s";
}

// 9 ------------------------------------------------------------------------
void clt_diagnostic(Outcome& o) {
  const auto t0 = Clock::now();
  const std::uint64_t samples = 200000;
  const unsigned seeds = 10;
  const double n_big = 10000;
  const double target = 2 * n_big / std::pow(n_big, 1.5);
  const double se = std::sqrt(6.0 / samples);
  unsigned decreasing = 0;
  double worst_ks = 0, skew_sum = 0, worst_dev = 0;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    double ks[3];
    double skew = 0;
    unsigned i = 0;
    for (unsigned n : {100u, 1000u, 10000u}) {
      SimConfig cfg;
      cfg.n = n;
      cfg.samples = samples;
      cfg.seed = seed;
      const auto s = run(cfg);
      ks[i++] = ks_normal(s).statistic;
      if (n == 10000) skew = standardized_moments(s).m[3];
    }
    if (ks[0] > ks[1] && ks[1] > ks[2]) ++decreasing;
    worst_ks = std::max(worst_ks, ks[2]);
    o.require(ks[2] < 0.05, "KS at n=1e4, seed " + std::to_string(seed) + " = " + fmt(ks[2]));
    o.require(std::abs(skew - target) < 5 * se, "skewness seed " + std::to_string(seed) + " = " + fmt(skew));
    worst_dev = std::max(worst_dev, std::abs(skew - target));
    skew_sum += skew;
  }
  o.require(2 * decreasing > seeds, "KS decreasing for " + std::to_string(decreasing) + "/10 seeds");
  const double pooled = skew_sum / seeds;
  o.require(std::abs(pooled - target) < 5 * se / std::sqrt(double(seeds)), "pooled skewness " + fmt(pooled));
  o.detail << "max KS(n=1e4) " << fmt(worst_ks) << " (<0.05); KS decreasing for " << decreasing
           << "/10 seeds; skewness pooled " << fmt(pooled) << " vs " << fmt(target) << " (band +-"
           << fmt(5 * se / std::sqrt(double(seeds))) << "), per-seed max dev " << fmt(worst_dev) << " (band +-"
           << fmt(5 * se) << "); " << fmt(seconds_since(t0), 3) << " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"exact identity suite", identity_suite},
      {"finite bounds", finite_bounds},
      {"moment anchors", moment_anchors},
      {"route equivalence", route_equivalence},
      {"asymptotic laws at n=400", asymptotic_laws},
      {"Bell convergence", bell_convergence},
      {"distribution oracle", distribution_oracle},
      {"simulator statistics", simulator_suite},
      {"CLT diagnostic", clt_diagnostic},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail.str() << std::endl;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion(s) failed" : "acceptance: all passed")
            << std::endl;
  return failed ? 1 : 0;
}
