#include "ssd/core/observation.hpp"

namespace ssd {

std::uint8_t cell_code(const GridState& grid, Pos p, int viewer) {
  if (!grid.in_bounds(p)) return code::kWall;
  const auto idx = grid.index(p);
  const int occupant = grid.occupancy[idx];
  if (occupant != kNoAgent) return occupant == viewer ? code::kSelf : code::agent(occupant);
  if (grid.items[idx] != code::kEmpty) return grid.items[idx];
  switch (grid.terrain[idx]) {
    case Terrain::Wall: return code::kWall;
    case Terrain::River: return code::kRiver;
    case Terrain::Floor:
    case Terrain::Spawn: return code::kFloor;
  }
  return code::kFloor;
}

Observation extract_observation(const GridState& grid, const AgentCore& agent) {
  Observation obs;
  const Pos fwd = forward_of(agent.orient);
  const Pos right = right_of(agent.orient);
  for (int row = 0; row < kObsSize; ++row) {
    const Pos line = agent.pos + (kSelfRow - row) * fwd;
    for (int col = 0; col < kObsSize; ++col) {
      obs.at(row, col) = cell_code(grid, line + (col - kSelfCol) * right, agent.id);
    }
  }
  return obs;
}

}  // namespace ssd
