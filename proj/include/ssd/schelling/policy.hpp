#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "ssd/core/observation.hpp"
#include "ssd/core/rng.hpp"
#include "ssd/env/config.hpp"

namespace ssd {

enum class Role { Cooperator, Defector, Random, External };

std::string_view role_name(Role role);
Role parse_role(std::string_view name);

// Per-agent private state. Never shared between agents.
struct PolicyMemory {
  int agent = 0;
  int num_agents = 1;
  std::int64_t steps = 0;
  int turns_in_place = 0;
};

class Policy {
 public:
  Policy(Role role, int action_count) : role_(role), action_count_(action_count) {}
  virtual ~Policy() = default;

  // Always returns an action in [0, action_count()).
  virtual ActionId act(const Observation& obs, PolicyMemory& memory, Rng& rng) const = 0;

  Role role() const { return role_; }
  int action_count() const { return action_count_; }

 private:
  Role role_;
  int action_count_;
};

// Hand-written heuristic for env_name. Role must be cooperator, defector or
// random; anything else throws ConfigError.
std::shared_ptr<const Policy> scripted_policy(std::string_view env_name, Role role);

}  // namespace ssd
