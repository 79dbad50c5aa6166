#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ssd/core/errors.hpp"
#include "ssd/env/env.hpp"

namespace ssd::testing {

// A state built from explicit map rows ('/'-separated), ready for hand setups.
inline EnvState make_state(std::string_view env, const std::string& rows, int num_agents,
                           Overrides extra = {}, std::uint64_t seed = 1) {
  extra.push_back({"map_rows", rows});
  extra.push_back({"num_agents", std::to_string(num_agents)});
  return reset(make_env(env, extra), seed).state;
}

// Moves agent id to p facing d, alive and unfrozen.
inline void put(EnvState& s, int id, Pos p, Dir d) {
  auto& a = s.agents[static_cast<std::size_t>(id)];
  const Pos old = a.pos;
  const bool was_alive = a.alive;
  if (was_alive) s.grid.occupancy[s.grid.index(old)] = kNoAgent;
  // An agent already on the target trades places with the moved one.
  const auto other = s.grid.agent_at(p);
  if (other != kNoAgent) {
    auto& b = s.agents[static_cast<std::size_t>(other)];
    s.grid.occupancy[s.grid.index(p)] = kNoAgent;
    b.alive = false;
    if (was_alive) place_agent(s.grid, b, old);
  }
  a.alive = false;
  place_agent(s.grid, a, p);
  a.orient = d;
  a.frozen_until = 0;
}

inline std::vector<ActionId> acts(std::initializer_list<ActionId> list) { return list; }

inline std::vector<ActionId> noops(const EnvState& s) {
  return std::vector<ActionId>(static_cast<std::size_t>(s.num_agents()), action::kNoop);
}

// Sets the item at p.
inline void set_item(EnvState& s, Pos p, std::uint8_t item) { s.grid.items[s.grid.index(p)] = item; }

// Binomial 3-sigma band check.
inline bool within_3sigma(double successes, double trials, double p) {
  const double mean = trials * p;
  const double sd = std::sqrt(trials * p * (1.0 - p));
  return std::abs(successes - mean) <= 3.0 * sd;
}

}  // namespace ssd::testing
