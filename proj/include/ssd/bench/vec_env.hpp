#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ssd/env/env.hpp"

namespace ssd {

// A batch of independent instances of one configuration. Instance i is
// seeded from derive_seed(seed, i) and draws its random actions from its own
// stream, so its trajectory does not depend on the batch size or on how the
// batch is split over workers. Finished episodes restart automatically.
class VecEnv {
 public:
  VecEnv(std::shared_ptr<const EnvConfig> config, int num_envs, std::uint64_t seed,
         std::size_t workers = 1);

  // One step of every instance with uniformly random legal actions.
  void step_random();

  int size() const { return static_cast<int>(states_.size()); }
  const EnvState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
  // Running digest of everything instance i has emitted (obs, rewards, done, events).
  std::uint64_t trajectory_digest(int i) const { return digests_[static_cast<std::size_t>(i)]; }
  std::int64_t total_steps() const { return total_steps_; }
  void set_track_digests(bool on) { track_ = on; }

 private:
  void step_one(std::size_t i);

  std::shared_ptr<const EnvConfig> config_;
  std::uint64_t seed_;
  std::size_t workers_;
  bool track_ = true;
  std::vector<EnvState> states_;
  std::vector<Rng> action_rngs_;
  std::vector<StepOutput> outputs_;
  std::vector<std::vector<ActionId>> actions_;
  std::vector<int> episode_;
  std::vector<std::uint64_t> digests_;
  std::int64_t total_steps_ = 0;
};

}  // namespace ssd
