#include "ssd/core/timers.hpp"

#include <vector>

namespace ssd {

void tick_timers(std::span<AgentCore> agents, GridState& grid, std::span<const Pos> spawn_cells,
                 Rng& rng) {
  const std::int64_t now = grid.step;
  for (auto& agent : agents) {
    if (agent.alive) {
      if (agent.frozen_until <= now) agent.frozen_until = 0;
      continue;
    }
    if (agent.respawn_at > now) continue;
    std::vector<Pos> free;
    for (const Pos p : spawn_cells) {
      if (grid.agent_at(p) == kNoAgent) free.push_back(p);
    }
    if (free.empty()) continue;
    const Pos chosen = free[rng.below(static_cast<std::uint32_t>(free.size()))];
    place_agent(grid, agent, chosen);
    agent.frozen_until = 0;
  }
}

}  // namespace ssd
