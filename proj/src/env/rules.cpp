#include "ssd/env/rules.hpp"

#include <algorithm>

#include "ssd/core/errors.hpp"

namespace ssd {

int count_disc_apples(const GridState& grid, Pos center) {
  int n = 0;
  for (const Pos off : kDiscOffsets) {
    const Pos p = center + off;
    if (grid.in_bounds(p) && grid.item_at(p) == code::kApple) ++n;
  }
  return n;
}

double apple_regrowth_prob(int neighbor_apples, const EnvParams& params) {
  if (neighbor_apples < 0) throw ContractViolation("apple_regrowth_prob: negative count");
  switch (neighbor_apples) {
    case 0: return 0.0;
    case 1: return params.regrow_prob_one;
    case 2: return params.regrow_prob_two;
    default: return params.regrow_prob_three;
  }
}

double cleanup_growth_prob(int dirt_count, int river_count, double theta_d, double theta_r,
                           double alpha) {
  if (river_count <= 0) throw ContractViolation("cleanup_growth_prob: river_count must be positive");
  if (dirt_count < 0 || dirt_count > river_count) {
    throw ContractViolation("cleanup_growth_prob: dirt_count outside [0, river_count]");
  }
  if (!(theta_r < theta_d)) throw ContractViolation("cleanup_growth_prob: need theta_r < theta_d");
  const double dirt_fraction = static_cast<double>(dirt_count) / river_count;
  const double scaled = (theta_d - dirt_fraction) / (theta_d - theta_r);
  return alpha * std::clamp(scaled, 0.0, 1.0);
}

std::optional<PdOutcome> pd_payoffs(std::array<int, 2> rho_row, std::array<int, 2> rho_col,
                                    const PayoffMatrix& matrix) {
  const int row_total = rho_row[0] + rho_row[1];
  const int col_total = rho_col[0] + rho_col[1];
  if (rho_row[0] < 0 || rho_row[1] < 0 || rho_col[0] < 0 || rho_col[1] < 0) {
    throw ContractViolation("pd_payoffs: negative inventory");
  }
  if (row_total == 0 || col_total == 0) return std::nullopt;
  const std::array<double, 2> v_row = {static_cast<double>(rho_row[0]) / row_total,
                                       static_cast<double>(rho_row[1]) / row_total};
  const std::array<double, 2> v_col = {static_cast<double>(rho_col[0]) / col_total,
                                       static_cast<double>(rho_col[1]) / col_total};
  const auto a_col = matrix.col();
  PdOutcome out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.row_reward += v_row[i] * matrix.row[i][j] * v_col[j];
      out.col_reward += v_row[i] * a_col[i][j] * v_col[j];
    }
  }
  return out;
}

std::optional<GiftOutcome> gift_transfer(Inventory& giver, Inventory& target, int cap,
                                         int multiplier) {
  for (int level = 0; level < 2; ++level) {
    const int q = giver[level];
    if (q <= 0) continue;
    GiftOutcome out;
    out.level = level;
    out.given = q;
    out.gained = std::min(multiplier * q, std::max(cap - target[level + 1], 0));
    giver[level] = 0;
    target[level + 1] += out.gained;
    return out;
  }
  return std::nullopt;
}

int consume_inventory(Inventory& inventory) {
  int total = 0;
  for (auto& count : inventory) {
    total += count;
    count = 0;
  }
  return total;
}

}  // namespace ssd
