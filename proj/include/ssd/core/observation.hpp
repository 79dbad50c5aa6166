#pragma once

#include <array>
#include <cstdint>

#include "ssd/core/grid.hpp"

namespace ssd {

inline constexpr int kObsSize = 11;
inline constexpr int kObsCells = kObsSize * kObsSize;
inline constexpr int kSelfRow = 9;  // 9 cells ahead, 1 behind
inline constexpr int kSelfCol = 5;  // 5 cells to either side

// Egocentric view: row 0 is farthest ahead, the observer sits at (9, 5).
struct Observation {
  std::array<std::uint8_t, kObsCells> cells{};
  // Own inventory: gift levels 1..3 or (cooperate, defect) resources.
  std::array<std::int32_t, 3> inventory{};

  std::uint8_t at(int row, int col) const { return cells[static_cast<std::size_t>(row * kObsSize + col)]; }
  std::uint8_t& at(int row, int col) { return cells[static_cast<std::size_t>(row * kObsSize + col)]; }

  friend bool operator==(const Observation&, const Observation&) = default;
};

// World cell shown at window (row, col) for an agent at pos facing orient.
inline Pos window_to_world(Pos pos, Dir orient, int row, int col) {
  const int ahead = kSelfRow - row;
  const int right = col - kSelfCol;
  return pos + ahead * forward_of(orient) + right * right_of(orient);
}

// Code of a single world cell as seen by viewer (out-of-map reads as wall).
std::uint8_t cell_code(const GridState& grid, Pos p, int viewer);

Observation extract_observation(const GridState& grid, const AgentCore& agent);

}  // namespace ssd
