#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ssd {

// Counter-based generator built on Philox2x64-10. The n-th draw is a pure
// function of (key, n), so a stream can be forked, copied or replayed
// without any hidden state.
class Rng {
 public:
  Rng() = default;
  explicit Rng(std::uint64_t seed) : key_(seed) {}
  Rng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  // Uniform integer in [0, n). n must be positive.
  std::uint32_t below(std::uint32_t n);
  // Uniform integer in [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }
  void advance(std::uint64_t n) { counter_ += n; }

  // Child stream keyed off (key, counter, stream). Children never share a key
  // domain with draws of the parent.
  Rng split(std::uint64_t stream) const;

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Raw Philox2x64-10 block function.
std::pair<std::uint64_t, std::uint64_t> philox2x64(std::uint64_t ctr0, std::uint64_t ctr1,
                                                   std::uint64_t key);

// Functional form: returns the advanced generator and n draws.
std::pair<Rng, std::vector<double>> rng_uniform(Rng rng, std::size_t n);

// Stable seed derivation for instance i of a batch / episode e of a run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace ssd
