#include "blockmerge/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "blockmerge/permutation.hpp"

namespace blockmerge {

std::string backend_name(Backend b) {
  return b == Backend::full_permutation ? "full_permutation" : "size_chain";
}

Backend parse_backend(const std::string& text) {
  if (text == "full_permutation" || text == "full") return Backend::full_permutation;
  if (text == "size_chain" || text == "chain") return Backend::size_chain;
  throw std::invalid_argument("unknown backend '" + text + "'");
}

void SimSummary::add(std::uint64_t x, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  if (count == 0) {
    min = max = x;
  } else {
    min = std::min(min, x);
    max = std::max(max, x);
  }
  count += multiplicity;
  histogram[x] += multiplicity;
  BigInt term(static_cast<unsigned long>(multiplicity));
  for (unsigned p = 0; p <= kPowers; ++p) {
    power_sums[p] += term;
    term *= static_cast<unsigned long>(x);
  }
}

void SimSummary::merge(const SimSummary& other) {
  if (other.count > 0) {
    if (count == 0) {
      min = other.min;
      max = other.max;
    } else {
      min = std::min(min, other.min);
      max = std::max(max, other.max);
    }
  }
  count += other.count;
  for (const auto& [x, c] : other.histogram) histogram[x] += c;
  for (unsigned p = 0; p <= kPowers; ++p) power_sums[p] += other.power_sums[p];
  stream_seeds.insert(stream_seeds.end(), other.stream_seeds.begin(), other.stream_seeds.end());
  std::sort(stream_seeds.begin(), stream_seeds.end());
}

double SimSummary::mean() const {
  if (count == 0) return 0;
  return to_double(make_rational(power_sums[1], BigInt(static_cast<unsigned long>(count))));
}

bool operator==(const SimSummary& a, const SimSummary& b) {
  return a.count == b.count && a.histogram == b.histogram && a.power_sums == b.power_sums && a.min == b.min &&
         a.max == b.max && a.stream_seeds == b.stream_seeds;
}

std::uint64_t simulate_once_full(unsigned s, Rng& rng, std::vector<unsigned>& perm, std::vector<unsigned>& scratch) {
  if (s == 0) throw std::invalid_argument("simulate_once_full requires s >= 1");
  perm.resize(s);
  std::iota(perm.begin(), perm.end(), 1u);
  std::uint64_t shuffles = 0;
  while (perm.size() > 1) {
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    ++shuffles;
    merge_blocks_in_place(perm, scratch);
  }
  return shuffles;
}

std::uint64_t simulate_once_full(unsigned s, Rng& rng) {
  std::vector<unsigned> perm, scratch;
  return simulate_once_full(s, rng, perm, scratch);
}

ChainSampler::ChainSampler(unsigned s_max) : s_max_(s_max) {
  if (s_max == 0) throw std::invalid_argument("ChainSampler requires s_max >= 1");
  std::vector<double> a(s_max + 1);
  a[0] = 1;
  if (s_max >= 1) a[1] = 1;
  for (unsigned j = 2; j <= s_max; ++j) a[j] = a[j - 1] + a[j - 2] / j;

  offset_.assign(s_max + 1, 0);
  length_.assign(s_max + 1, 0);
  for (unsigned s = 2; s <= s_max; ++s) {
    offset_[s] = cumulative_.size();
    double inv_fact = 1;
    double total = 0;
    for (unsigned d = 0; d < s; ++d) {
      if (d > 0) inv_fact /= d;
      const double term = a[s - 1 - d] * inv_fact / s;
      if (d > 0 && term < 1e-25) break;
      total += term;
      cumulative_.push_back(total);
    }
    length_[s] = static_cast<unsigned>(cumulative_.size() - offset_[s]);
    for (std::size_t i = offset_[s]; i < cumulative_.size(); ++i) cumulative_[i] /= total;
    cumulative_.back() = 1.0;
  }
}

double ChainSampler::prob(unsigned s, unsigned k) const {
  if (s < 2 || s > s_max_ || k == 0 || k > s) throw std::out_of_range("ChainSampler::prob");
  const unsigned d = s - k;
  if (d >= length_[s]) return 0;
  const double* c = cumulative_.data() + offset_[s];
  return d == 0 ? c[0] : c[d] - c[d - 1];
}

unsigned ChainSampler::next_size(unsigned s, Rng& rng) const {
  const double u = rng.uniform();
  const double* c = cumulative_.data() + offset_[s];
  const unsigned last = length_[s] - 1;
  unsigned d = 0;
  if (last >= 3) {
    // d <= 2 covers ~92% of draws; plain compares beat the loop there
    d = unsigned(u >= c[0]) + unsigned(u >= c[1]) + unsigned(u >= c[2]);
  }
  while (d < last && u >= c[d]) ++d;
  return s - d;
}

std::uint64_t ChainSampler::run(unsigned s, Rng& rng) const {
  if (s == 0 || s > s_max_) throw std::out_of_range("ChainSampler::run size outside table");
  std::uint64_t steps = 0;
  while (s > 1) {
    s = next_size(s, rng);
    ++steps;
  }
  return steps;
}

std::uint64_t simulate_once_chain(unsigned s, Rng& rng) {
  if (s == 0) throw std::invalid_argument("simulate_once_chain requires s >= 1");
  if (s == 1) return 0;
  return ChainSampler(s).run(s, rng);
}

SimSummary run(const SimConfig& config, const Progress& progress) {
  if (config.n == 0) throw std::invalid_argument("n must be >= 1");
  if (config.samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (config.workers == 0) throw std::invalid_argument("workers must be >= 1");
  if (config.chunk == 0) throw std::invalid_argument("chunk must be >= 1");

  const std::uint64_t streams = (config.samples + config.chunk - 1) / config.chunk;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(config.workers, streams));
  const bool chain = config.backend == Backend::size_chain;
  const ChainSampler sampler(chain ? std::max(config.n, 2u) : 2u);

  std::vector<SimSummary> partial(workers);
  std::atomic<std::uint64_t> done{0};
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    try {
      std::vector<unsigned> perm, scratch;
      std::unordered_map<std::uint64_t, std::uint64_t> local;
      for (std::uint64_t i = w; i < streams; i += workers) {
        Rng rng(stream_seed(config.seed, i));
        const std::uint64_t begin = i * config.chunk;
        const std::uint64_t end = std::min(config.samples, begin + config.chunk);
        local.clear();
        for (std::uint64_t j = begin; j < end; ++j) {
          const std::uint64_t x =
              chain ? sampler.run(config.n, rng) : simulate_once_full(config.n, rng, perm, scratch);
          ++local[x];
        }
        for (const auto& [x, c] : local) partial[w].add(x, c);
        const std::uint64_t total = done += end - begin;
        if (progress) progress(total, config.samples);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SimSummary out;
  out.config = config;
  for (const auto& p : partial) out.merge(p);
  out.stream_seeds.clear();
  for (std::uint64_t i = 0; i < streams; ++i) out.stream_seeds.push_back(stream_seed(config.seed, i));
  return out;
}

}  // namespace blockmerge
