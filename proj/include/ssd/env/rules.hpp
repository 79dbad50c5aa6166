#pragma once

#include <array>
#include <optional>

#include "ssd/core/grid.hpp"
#include "ssd/env/config.hpp"

namespace ssd {

// Offsets at Euclidean distance 1..2 from a cell (12 neighbours).
inline constexpr std::array<Pos, 12> kDiscOffsets = {{
    {-2, 0}, {-1, -1}, {-1, 0}, {-1, 1}, {0, -2}, {0, -1},
    {0, 1},  {0, 2},   {1, -1}, {1, 0},  {1, 1},  {2, 0},
}};

int count_disc_apples(const GridState& grid, Pos center);

// 0 -> 0, 1 -> 0.001, 2 -> 0.005, >=3 -> 0.025 (or the configured values).
double apple_regrowth_prob(int neighbor_apples, const EnvParams& params = {});

// alpha * clip((theta_d - dirt_fraction) / (theta_d - theta_r), 0, 1).
// Requires river_count > 0, 0 <= dirt_count <= river_count, theta_r < theta_d.
double cleanup_growth_prob(int dirt_count, int river_count, double theta_d, double theta_r,
                           double alpha);

struct PayoffMatrix {
  // Row player's payoffs; index 0 = cooperate, 1 = defect.
  std::array<std::array<double, 2>, 2> row{{{3.0, -1.0}, {5.0, 1.0}}};

  std::array<std::array<double, 2>, 2> col() const {
    return {{{row[0][0], row[1][0]}, {row[0][1], row[1][1]}}};
  }
  static PayoffMatrix from(const EnvParams& p) {
    return PayoffMatrix{{{{p.pd_cc, p.pd_cd}, {p.pd_dc, p.pd_dd}}}};
  }
};

struct PdOutcome {
  double row_reward = 0.0;
  double col_reward = 0.0;
};

// Bilinear payoffs of the normalised inventories. nullopt when either
// inventory is empty.
std::optional<PdOutcome> pd_payoffs(std::array<int, 2> rho_row, std::array<int, 2> rho_col,
                                    const PayoffMatrix& matrix = {});

// Token counts per refinement level (1..3). Prisoner's dilemma inventories
// reuse slots 0 (cooperate) and 1 (defect).
using Inventory = std::array<int, 3>;

struct GiftOutcome {
  int level = 0;   // 0-based level given away
  int given = 0;   // tokens removed from the giver
  int gained = 0;  // tokens added to the target at level + 1
};

// Gives away the giver's whole lowest non-empty refinable level; the target
// gains multiplier * given at the next level, capped at cap.
std::optional<GiftOutcome> gift_transfer(Inventory& giver, Inventory& target, int cap = 15,
                                         int multiplier = 3);

// Reward for consuming every held token (one per token); empties the inventory.
int consume_inventory(Inventory& inventory);

}  // namespace ssd
