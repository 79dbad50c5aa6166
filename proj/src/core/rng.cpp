#include "ssd/core/rng.hpp"

#include <stdexcept>

namespace ssd {

namespace {

constexpr std::uint64_t kPhiloxM = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kPhiloxW = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSplitDomain = 0x8000000000000000ULL;

}  // namespace

std::pair<std::uint64_t, std::uint64_t> philox2x64(std::uint64_t ctr0, std::uint64_t ctr1,
                                                   std::uint64_t key) {
  for (int round = 0; round < 10; ++round) {
    const unsigned __int128 product = static_cast<unsigned __int128>(kPhiloxM) * ctr0;
    const auto hi = static_cast<std::uint64_t>(product >> 64);
    const auto lo = static_cast<std::uint64_t>(product);
    ctr0 = hi ^ key ^ ctr1;
    ctr1 = lo;
    key += kPhiloxW;
  }
  return {ctr0, ctr1};
}

std::uint64_t Rng::next_u64() { return philox2x64(counter_++, 0, key_).first; }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint32_t Rng::below(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::uint32_t>(wide >> 64);
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * span;
  return lo + static_cast<std::int64_t>(wide >> 64);
}

Rng Rng::split(std::uint64_t stream) const {
  const auto [child_key, mix] = philox2x64(counter_, kSplitDomain | stream, key_);
  (void)mix;
  return Rng(child_key, 0);
}

std::pair<Rng, std::vector<double>> rng_uniform(Rng rng, std::size_t n) {
  std::vector<double> values(n);
  for (auto& v : values) v = rng.uniform();
  return {rng, std::move(values)};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return philox2x64(a, b ^ kSplitDomain ^ 0x5EEDULL, seed).first;
}

}  // namespace ssd
