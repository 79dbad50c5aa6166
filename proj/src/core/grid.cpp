#include "ssd/core/grid.hpp"

#include "ssd/core/errors.hpp"

namespace ssd {

GridState::GridState(int w, int h, Terrain fill)
    : width(w),
      height(h),
      terrain(static_cast<std::size_t>(w) * h, fill),
      items(static_cast<std::size_t>(w) * h, code::kEmpty),
      occupancy(static_cast<std::size_t>(w) * h, kNoAgent) {
  if (w <= 0 || h <= 0) throw ContractViolation("GridState: dimensions must be positive");
}

void place_agent(GridState& grid, AgentCore& agent, Pos p) {
  if (!grid.open(p)) throw ContractViolation("place_agent: target is not an open cell");
  if (grid.agent_at(p) != kNoAgent) throw ContractViolation("place_agent: target cell occupied");
  if (agent.alive && grid.in_bounds(agent.pos) && grid.agent_at(agent.pos) == agent.id) {
    grid.occupancy[grid.index(agent.pos)] = kNoAgent;
  }
  agent.pos = p;
  agent.alive = true;
  grid.occupancy[grid.index(p)] = static_cast<std::int8_t>(agent.id);
}

void remove_agent(GridState& grid, AgentCore& agent, std::int64_t respawn_at) {
  if (agent.alive && grid.agent_at(agent.pos) == agent.id) {
    grid.occupancy[grid.index(agent.pos)] = kNoAgent;
  }
  agent.alive = false;
  agent.respawn_at = respawn_at;
}

bool occupancy_consistent(const GridState& grid, std::span<const AgentCore> agents) {
  std::size_t occupied = 0;
  for (auto o : grid.occupancy) occupied += (o != kNoAgent);
  std::size_t alive = 0;
  for (const auto& a : agents) {
    if (!a.alive) continue;
    ++alive;
    if (!grid.in_bounds(a.pos) || grid.agent_at(a.pos) != a.id) return false;
  }
  return occupied == alive;
}

}  // namespace ssd
