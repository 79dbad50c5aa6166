#pragma once

#include <span>
#include <vector>

#include "ssd/core/grid.hpp"
#include "ssd/core/rng.hpp"

namespace ssd {

// Random priority ranks (0 = highest) for n agents. Always consumes n - 1 draws.
std::vector<int> draw_priority(std::size_t n, Rng& rng);

// Which agents move, given per-agent targets and priority ranks. Rules:
// the target must be open; among agents targeting the same cell only the
// best-ranked one may move; an agent may enter an occupied cell only if the
// occupant moves away, and two agents trading cells both stay.
std::vector<bool> decide_moves(const GridState& grid, std::span<const AgentCore> agents,
                               std::span<const Pos> targets, std::span<const int> rank);

// Simultaneous move resolution. targets[i] is agents[i]'s current cell (stay)
// or one of its 4-neighbours; dead agents are ignored.
void resolve_moves(GridState& grid, std::span<AgentCore> agents, std::span<const Pos> targets,
                   Rng& rng);

}  // namespace ssd
