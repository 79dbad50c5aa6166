#include "ssd/bench/vec_env.hpp"

#include "ssd/core/errors.hpp"
#include "ssd/core/parallel.hpp"

namespace ssd {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

void fnv(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

void digest_output(std::uint64_t& h, const StepOutput& out) {
  for (const auto& o : out.obs) {
    fnv(h, o.cells.data(), o.cells.size());
    fnv(h, o.inventory.data(), sizeof(o.inventory));
  }
  fnv(h, out.rewards.data(), out.rewards.size() * sizeof(double));
  const unsigned char done = out.done ? 1 : 0;
  fnv(h, &done, 1);
  for (const auto& e : out.events) {
    const auto kind = static_cast<std::uint8_t>(e.kind);
    fnv(h, &kind, 1);
    fnv(h, &e.agent, sizeof(e.agent));
    fnv(h, &e.step, sizeof(e.step));
    fnv(h, &e.amount, sizeof(e.amount));
  }
}

}  // namespace

VecEnv::VecEnv(std::shared_ptr<const EnvConfig> config, int num_envs, std::uint64_t seed,
               std::size_t workers)
    : config_(std::move(config)), seed_(seed), workers_(workers) {
  if (num_envs < 1) throw ContractViolation("VecEnv: num_envs must be at least 1");
  const auto n = static_cast<std::size_t>(num_envs);
  states_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    states_.push_back(reset(config_, derive_seed(seed_, i)).state);
    action_rngs_.emplace_back(derive_seed(seed_, i, 1));
  }
  outputs_.resize(n);
  actions_.assign(n, std::vector<ActionId>(static_cast<std::size_t>(config_->num_agents)));
  episode_.assign(n, 0);
  digests_.assign(n, kFnvOffset);
}

void VecEnv::step_one(std::size_t i) {
  auto& state = states_[i];
  auto& rng = action_rngs_[i];
  auto& actions = actions_[i];
  const auto count = static_cast<std::uint32_t>(config_->actions());
  for (auto& a : actions) a = static_cast<ActionId>(rng.below(count));
  auto& out = outputs_[i];
  step_into(state, actions, out);
  if (track_) digest_output(digests_[i], out);
  if (out.done) {
    ++episode_[i];
    state = reset(config_, derive_seed(seed_, i, 2 + static_cast<std::uint64_t>(episode_[i]))).state;
  }
}

void VecEnv::step_random() {
  parallel_for(states_.size(), workers_, [this](std::size_t i) { step_one(i); });
  total_steps_ += static_cast<std::int64_t>(states_.size());
}

}  // namespace ssd
