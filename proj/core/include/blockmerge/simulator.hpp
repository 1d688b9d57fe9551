#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "blockmerge/exact_rational.hpp"
#include "blockmerge/rng.hpp"

namespace blockmerge {

enum class Backend { full_permutation, size_chain };

std::string backend_name(Backend b);
/// "full_permutation" / "full" or "size_chain" / "chain".
Backend parse_backend(const std::string& text);

struct SimConfig {
  unsigned n = 1;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Backend backend = Backend::size_chain;
  unsigned workers = 1;
  /// Samples per stream. Stream i draws from stream_seed(seed, i) and covers
  /// samples [i*chunk, (i+1)*chunk); workers take streams round-robin, so the
  /// merged result does not depend on the worker count.
  std::uint64_t chunk = 4096;
};

struct SimSummary {
  static constexpr unsigned kPowers = 8;

  SimConfig config;
  std::uint64_t count = 0;
  /// value -> multiplicity.
  std::map<std::uint64_t, std::uint64_t> histogram;
  /// power_sums[p] = sum x^p, p = 0..8, exact.
  std::array<BigInt, kPowers + 1> power_sums{};
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  /// One seed per stream, in stream order.
  std::vector<std::uint64_t> stream_seeds;

  void add(std::uint64_t x, std::uint64_t multiplicity = 1);
  /// Pools another summary of the same (n, backend). Associative and
  /// commutative; stream seeds are re-sorted into stream order.
  void merge(const SimSummary& other);

  double mean() const;
  friend bool operator==(const SimSummary& a, const SimSummary& b);
};

/// One run of the block-merge process on [s] with real permutations:
/// shuffle, count blocks, merge and relabel, until one element is left.
/// `perm` and `scratch` are reusable buffers.
std::uint64_t simulate_once_full(unsigned s, Rng& rng, std::vector<unsigned>& perm, std::vector<unsigned>& scratch);
std::uint64_t simulate_once_full(unsigned s, Rng& rng);

/// Inverse-CDF sampler of the block count Y_s for all 2 <= s <= s_max.
///
/// P(Y_s = s - d) = a_{s-1-d} / (s d!) with a_j = A(j)/j!, which obeys
/// a_j = a_{j-1} + a_{j-2}/j. Each size keeps a cumulative table over d,
/// cut once terms fall below 1e-25 and renormalized.
class ChainSampler {
 public:
  explicit ChainSampler(unsigned s_max);

  unsigned s_max() const { return s_max_; }
  /// P(Y_s = k) as stored (after truncation), for validation.
  double prob(unsigned s, unsigned k) const;
  unsigned next_size(unsigned s, Rng& rng) const;
  std::uint64_t run(unsigned s, Rng& rng) const;

 private:
  unsigned s_max_;
  std::vector<std::size_t> offset_;
  std::vector<unsigned> length_;
  std::vector<double> cumulative_;
};

std::uint64_t simulate_once_chain(unsigned s, Rng& rng);

/// Progress hook: (samples done, samples total). Called from worker threads.
using Progress = std::function<void(std::uint64_t, std::uint64_t)>;

/// Throws std::invalid_argument for zero samples, zero workers or n == 0.
SimSummary run(const SimConfig& config, const Progress& progress = {});

}  // namespace blockmerge
