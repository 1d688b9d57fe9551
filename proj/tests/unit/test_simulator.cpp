#include <doctest.h>

#include <cmath>
#include <numeric>

#include "blockmerge/clt.hpp"
#include "blockmerge/distribution.hpp"
#include "blockmerge/permutation.hpp"
#include "blockmerge/simulator.hpp"
#include "oracles.hpp"

using namespace blockmerge;

TEST_CASE("seed mixing is frozen") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(stream_seed(7, 0) == splitmix64(7 ^ splitmix64(0)));
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("bounded draws are uniform") {
  Rng rng(1);
  std::vector<unsigned> counts(7, 0);
  const unsigned n = 70000;
  for (unsigned i = 0; i < n; ++i) ++counts[rng.below(7)];
  double chi = 0;
  for (auto c : counts) chi += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  CHECK(chi_square_pvalue(chi, 6) > 1e-4);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0);
    CHECK(u < 1);
  }
}

TEST_CASE("sampler table is the enumerated block law") {
  const auto q = oracle::block_law(8);
  const ChainSampler sampler(8);
  for (unsigned s = 2; s <= 8; ++s) {
    for (unsigned k = 1; k <= s; ++k) CHECK(sampler.prob(s, k) == doctest::Approx(to_double(q[s][k])).epsilon(1e-14));
  }
}

TEST_CASE("shuffled block counts follow the enumerated law") {
  const auto q = oracle::block_law(6);
  Rng rng(99);
  std::vector<unsigned> perm(6);
  std::vector<std::uint64_t> counts(7, 0);
  const unsigned draws = 200000;
  for (unsigned i = 0; i < draws; ++i) {
    std::iota(perm.begin(), perm.end(), 1u);
    for (unsigned j = 5; j > 0; --j) std::swap(perm[j], perm[rng.below(j + 1)]);
    ++counts[block_count(perm)];
  }
  double chi = 0;
  for (unsigned k = 1; k <= 6; ++k) {
    const double e = draws * to_double(q[6][k]);
    chi += (counts[k] - e) * (counts[k] - e) / e;
  }
  CHECK(chi_square_pvalue(chi, 5) > 1e-4);
}

TEST_CASE("single runs") {
  Rng rng(3);
  CHECK(simulate_once_full(1, rng) == 0);
  CHECK(simulate_once_chain(1, rng) == 0);
  for (int i = 0; i < 50; ++i) {
    CHECK(simulate_once_full(9, rng) >= 1);
    CHECK(simulate_once_chain(9, rng) >= 1);
  }
}

TEST_CASE("worker count does not change the merged result") {
  for (auto backend : {Backend::size_chain, Backend::full_permutation}) {
    SimConfig cfg;
    cfg.n = 12;
    cfg.samples = 30000;
    cfg.seed = 5;
    cfg.backend = backend;
    cfg.chunk = 1000;
    cfg.workers = 1;
    const auto one = run(cfg);
    for (unsigned w : {2u, 3u, 8u}) {
      cfg.workers = w;
      const auto many = run(cfg);
      CHECK(many == one);
      CHECK(many.stream_seeds == one.stream_seeds);
    }
    CHECK(one.count == 30000);
    CHECK(one.stream_seeds.size() == 30);
  }
}

TEST_CASE("merge is associative and commutative") {
  auto sample = [](std::uint64_t seed) {
    SimConfig cfg;
    cfg.n = 6;
    cfg.samples = 2000;
    cfg.seed = seed;
    return run(cfg);
  };
  const SimSummary a = sample(1), b = sample(2), c = sample(3);
  SimSummary ab_c = a, a_bc = b;
  ab_c.merge(b);
  ab_c.merge(c);
  a_bc.merge(c);
  SimSummary tmp = a;
  tmp.merge(a_bc);
  CHECK(ab_c == tmp);
  SimSummary ba = b;
  ba.merge(a);
  SimSummary ab = a;
  ab.merge(b);
  CHECK(ab == ba);
  CHECK(ab.count == 4000);
}

TEST_CASE("power sums agree with the histogram") {
  SimConfig cfg;
  cfg.n = 8;
  cfg.samples = 5000;
  const auto s = run(cfg);
  for (unsigned p = 0; p <= SimSummary::kPowers; ++p) {
    BigInt total(0);
    for (auto [x, c] : s.histogram) total += pow(BigInt(std::to_string(x)), p) * BigInt(std::to_string(c));
    CHECK(total == s.power_sums[p]);
  }
}

TEST_CASE("backends agree in law") {
  SimConfig cfg;
  cfg.n = 7;
  cfg.samples = 60000;
  cfg.seed = 11;
  cfg.backend = Backend::size_chain;
  const auto chain = run(cfg);
  cfg.backend = Backend::full_permutation;
  const auto full = run(cfg);
  CHECK(chi_square_two_sample(chain, full).p_value > 1e-4);
  const auto view = pmf_view(exact_pmf(7, 200));
  CHECK(tv_distance(chain, view) < 0.02);
  CHECK(tv_distance(full, view) < 0.02);
}

TEST_CASE("bad configurations are rejected") {
  SimConfig cfg;
  cfg.n = 5;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
  cfg.samples = 10;
  cfg.workers = 0;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
  CHECK_THROWS(parse_backend("gpu"));
  CHECK(parse_backend("full") == Backend::full_permutation);
}
