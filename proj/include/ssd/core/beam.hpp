#pragma once

#include <optional>

#include "ssd/core/grid.hpp"

namespace ssd {

inline constexpr int kDefaultBeamLength = 3;

struct BeamHit {
  Pos cell;
  int distance = 0;
  int agent = kNoAgent;  // occupant of the hit cell, if any
};

// Scans cells 1..length straight ahead of origin. Walls and the map edge stop
// the beam with no hit. A cell satisfying hit(grid, cell) is returned. Agents
// that do not satisfy the predicate still absorb the beam; items are
// transparent.
template <typename HitPredicate>
std::optional<BeamHit> cast_beam(const GridState& grid, const AgentCore& origin, int length,
                                 HitPredicate&& hit) {
  const Pos step = forward_of(origin.orient);
  Pos cell = origin.pos;
  for (int d = 1; d <= length; ++d) {
    cell = cell + step;
    if (!grid.in_bounds(cell) || grid.terrain_at(cell) == Terrain::Wall) return std::nullopt;
    if (hit(grid, cell)) return BeamHit{cell, d, grid.agent_at(cell)};
    if (grid.agent_at(cell) != kNoAgent) return std::nullopt;
  }
  return std::nullopt;
}

inline bool hits_agent(const GridState& grid, Pos cell) { return grid.agent_at(cell) != kNoAgent; }

}  // namespace ssd
