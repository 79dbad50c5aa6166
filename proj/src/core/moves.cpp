#include "ssd/core/moves.hpp"

#include <cstdlib>
#include <numeric>

#include "ssd/core/errors.hpp"

namespace ssd {

std::vector<int> draw_priority(std::size_t n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = rng.below(static_cast<std::uint32_t>(i));
    std::swap(order[i - 1], order[j]);
  }
  std::vector<int> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  return rank;
}

std::vector<bool> decide_moves(const GridState& grid, std::span<const AgentCore> agents,
                               std::span<const Pos> targets, std::span<const int> rank) {
  const std::size_t n = agents.size();
  if (targets.size() != n || rank.size() != n) {
    throw ContractViolation("decide_moves: per-agent spans must have equal length");
  }
  std::vector<bool> moving(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = agents[i];
    if (!a.alive || targets[i] == a.pos) continue;
    const int dist = std::abs(targets[i].row - a.pos.row) + std::abs(targets[i].col - a.pos.col);
    if (dist != 1) throw ContractViolation("resolve_moves: intent outside the 4-neighbourhood");
    moving[i] = grid.open(targets[i]);
  }
  // Contested cells go to the best-ranked claimant.
  for (std::size_t i = 0; i < n; ++i) {
    if (!moving[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !agents[j].alive || targets[j] == agents[j].pos) continue;
      if (targets[j] == targets[i] && rank[j] < rank[i] && grid.open(targets[j])) {
        moving[i] = false;
        break;
      }
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!moving[i]) continue;
      const int occupant = grid.agent_at(targets[i]);
      if (occupant == kNoAgent) continue;
      const auto j = static_cast<std::size_t>(occupant);
      if (!moving[j]) {
        moving[i] = false;
        changed = true;
      } else if (targets[j] == agents[i].pos) {
        moving[i] = false;
        moving[j] = false;
        changed = true;
      }
    }
  }
  return moving;
}

void resolve_moves(GridState& grid, std::span<AgentCore> agents, std::span<const Pos> targets,
                   Rng& rng) {
  const auto rank = draw_priority(agents.size(), rng);
  const auto moving = decide_moves(grid, agents, targets, rank);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (moving[i]) grid.occupancy[grid.index(agents[i].pos)] = kNoAgent;
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!moving[i]) continue;
    agents[i].pos = targets[i];
    grid.occupancy[grid.index(targets[i])] = static_cast<std::int8_t>(agents[i].id);
  }
}

}  // namespace ssd
