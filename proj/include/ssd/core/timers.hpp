#pragma once

#include <cstdint>
#include <span>

#include "ssd/core/grid.hpp"
#include "ssd/core/rng.hpp"

namespace ssd {

// Start-of-step bookkeeping at time grid.step: freezes that have expired are
// cleared, and dead agents whose respawn time has come are put on a uniformly
// chosen free spawn cell (lowest id first). With no free spawn cell the agent
// stays dead and is retried next step.
void tick_timers(std::span<AgentCore> agents, GridState& grid, std::span<const Pos> spawn_cells,
                 Rng& rng);

// Each eligible empty, unoccupied cell independently receives item with
// probability prob. Returns the number of items placed.
template <typename Eligible>
int spawn_items(GridState& grid, Rng& rng, double prob, std::uint8_t item, Eligible&& eligible) {
  int placed = 0;
  if (prob <= 0.0) return 0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    if (grid.items[i] != code::kEmpty || grid.occupancy[i] != kNoAgent) continue;
    const Pos p = grid.pos_of(i);
    if (grid.terrain[i] == Terrain::Wall || !eligible(grid, p)) continue;
    if (rng.bernoulli(prob)) {
      grid.items[i] = item;
      ++placed;
    }
  }
  return placed;
}

}  // namespace ssd
