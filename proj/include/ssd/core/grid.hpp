#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ssd {

// Categorical cell codes shared by the item layer and by observations.
namespace code {
inline constexpr std::uint8_t kEmpty = 0;  // item layer: nothing; observation: floor
inline constexpr std::uint8_t kFloor = 0;
inline constexpr std::uint8_t kWall = 1;
inline constexpr std::uint8_t kRiver = 2;
inline constexpr std::uint8_t kPollution = 3;
inline constexpr std::uint8_t kApple = 4;
inline constexpr std::uint8_t kIron = 5;
inline constexpr std::uint8_t kGold = 6;
inline constexpr std::uint8_t kGoldPartial = 7;
inline constexpr std::uint8_t kMushRed = 8;
inline constexpr std::uint8_t kMushGreen = 9;
inline constexpr std::uint8_t kMushBlue = 10;
inline constexpr std::uint8_t kMushOrange = 11;
inline constexpr std::uint8_t kToken = 12;
inline constexpr std::uint8_t kResCoop = 13;
inline constexpr std::uint8_t kResDefect = 14;
inline constexpr std::uint8_t kSelf = 15;
inline constexpr std::uint8_t kAgentBase = 16;  // + agent id
inline constexpr std::uint8_t kCoinBase = 48;   // + owner agent id
inline constexpr int kMaxAgents = 32;

inline constexpr std::uint8_t agent(int id) { return static_cast<std::uint8_t>(kAgentBase + id); }
inline constexpr std::uint8_t coin(int owner) { return static_cast<std::uint8_t>(kCoinBase + owner); }
inline constexpr bool is_agent(std::uint8_t c) { return c >= kAgentBase && c < kCoinBase; }
inline constexpr bool is_coin(std::uint8_t c) { return c >= kCoinBase && c < kCoinBase + kMaxAgents; }
inline constexpr int coin_owner(std::uint8_t c) { return c - kCoinBase; }
inline constexpr bool is_mushroom(std::uint8_t c) { return c >= kMushRed && c <= kMushOrange; }
inline constexpr bool is_ore(std::uint8_t c) { return c >= kIron && c <= kGoldPartial; }
}  // namespace code

enum class Terrain : std::uint8_t { Floor, Wall, River, Spawn };

enum class Dir : std::uint8_t { North, East, South, West };

inline constexpr Dir turn_left(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 3) % 4); }
inline constexpr Dir turn_right(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 1) % 4); }

struct Pos {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pos&, const Pos&) = default;
  friend Pos operator+(Pos a, Pos b) { return {a.row + b.row, a.col + b.col}; }
  friend Pos operator*(int k, Pos a) { return {k * a.row, k * a.col}; }
};

inline constexpr Pos forward_of(Dir d) {
  switch (d) {
    case Dir::North: return {-1, 0};
    case Dir::East: return {0, 1};
    case Dir::South: return {1, 0};
    case Dir::West: return {0, -1};
  }
  return {0, 0};
}
inline constexpr Pos right_of(Dir d) { return forward_of(turn_right(d)); }

inline constexpr int kNoAgent = -1;

struct GridState {
  int width = 0;
  int height = 0;
  std::vector<Terrain> terrain;
  std::vector<std::uint8_t> items;
  std::vector<std::int8_t> occupancy;
  std::int64_t step = 0;

  GridState() = default;
  GridState(int w, int h, Terrain fill = Terrain::Floor);

  bool in_bounds(Pos p) const { return p.row >= 0 && p.row < height && p.col >= 0 && p.col < width; }
  std::size_t index(Pos p) const { return static_cast<std::size_t>(p.row) * width + p.col; }
  Pos pos_of(std::size_t idx) const {
    return {static_cast<int>(idx / width), static_cast<int>(idx % width)};
  }
  Terrain terrain_at(Pos p) const { return terrain[index(p)]; }
  std::uint8_t item_at(Pos p) const { return items[index(p)]; }
  int agent_at(Pos p) const { return occupancy[index(p)]; }
  // Walkable and able to hold items: anything but WALL.
  bool open(Pos p) const { return in_bounds(p) && terrain_at(p) != Terrain::Wall; }
  std::size_t cell_count() const { return terrain.size(); }

  friend bool operator==(const GridState&, const GridState&) = default;
};

struct AgentCore {
  int id = 0;
  Pos pos;
  Dir orient = Dir::North;
  std::int64_t frozen_until = 0;  // acts as no-op while step < frozen_until
  bool alive = true;
  std::int64_t respawn_at = 0;

  bool active(std::int64_t step) const { return alive && frozen_until <= step; }

  friend bool operator==(const AgentCore&, const AgentCore&) = default;
};

void place_agent(GridState& grid, AgentCore& agent, Pos p);
void remove_agent(GridState& grid, AgentCore& agent, std::int64_t respawn_at);

// True when occupancy and agent positions agree for every agent.
bool occupancy_consistent(const GridState& grid, std::span<const AgentCore> agents);

}  // namespace ssd
