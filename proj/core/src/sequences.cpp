#include "blockmerge/sequences.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

namespace blockmerge::seq {

namespace {

/// Index-keyed table grown by `Extend(table, next_index)`.
template <class T, class Extend>
class MonotoneCache {
 public:
  explicit MonotoneCache(Extend extend) : extend_(extend) {}

  const T& at(unsigned n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    while (values_.size() <= n) values_.push_back(extend_(values_, values_.size()));
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<T> values_;
  Extend extend_;
};

auto& factorial_cache() {
  auto extend = [](const std::deque<BigInt>& prev, std::size_t i) {
    return i == 0 ? BigInt(1) : BigInt(prev[i - 1] * static_cast<unsigned long>(i));
  };
  static MonotoneCache<BigInt, decltype(extend)> cache(extend);
  return cache;
}

auto& a_cache() {
  auto extend = [](const std::deque<BigInt>& prev, std::size_t i) {
    if (i < 2) return BigInt(1);
    return BigInt(prev[i - 1] * static_cast<unsigned long>(i) +
                  prev[i - 2] * static_cast<unsigned long>(i - 1));
  };
  static MonotoneCache<BigInt, decltype(extend)> cache(extend);
  return cache;
}

auto& harmonic_cache() {
  auto extend = [](const std::deque<ExactRational>& prev, std::size_t i) {
    if (i == 0) return ExactRational(0);
    return ExactRational(prev[i - 1] + ExactRational(1, static_cast<unsigned long>(i)));
  };
  static MonotoneCache<ExactRational, decltype(extend)> cache(extend);
  return cache;
}

}  // namespace

const BigInt& factorial(unsigned n) { return factorial_cache().at(n); }

const BigInt& a_number(unsigned n) { return a_cache().at(n); }

const ExactRational& harmonic(unsigned n) { return harmonic_cache().at(n); }

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt a_nk(unsigned n, unsigned k) {
  if (k == 0 || k > n) return BigInt(0);
  return binomial(n - 1, k - 1) * a_number(k - 1);
}

BigInt double_factorial(long k) {
  BigInt out(1);
  for (long i = k; i > 1; i -= 2) out *= static_cast<unsigned long>(i);
  return out;
}

}  // namespace blockmerge::seq
