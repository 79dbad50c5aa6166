#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ssd/core/beam.hpp"
#include "ssd/core/grid.hpp"
#include "ssd/core/observation.hpp"
#include "ssd/core/rng.hpp"
#include "ssd/env/config.hpp"
#include "ssd/env/rules.hpp"
#include "ssd/metrics/metrics.hpp"

namespace ssd {

// Static facts derived from the map at reset time.
struct MapInfo {
  std::vector<Pos> spawn_cells;
  std::vector<int> patch_of;                  // per cell, -1 outside any apple patch
  std::vector<std::vector<std::size_t>> patches;
  std::vector<std::size_t> river_cells;
  std::vector<std::size_t> orchard_cells;
  std::array<std::vector<std::size_t>, 4> mushroom_homes;  // red, green, blue, orange
  std::vector<std::size_t> coop_homes;
  std::vector<std::size_t> defect_homes;
};

struct GoldWindow {
  std::size_t cell = 0;
  std::int64_t start = 0;
  std::uint32_t miners = 0;  // bit per agent id

  friend bool operator==(const GoldWindow&, const GoldWindow&) = default;
};

// Running counters; read by tests and diagnostics.
enum class Stat : int {
  ApplesEaten,
  Zaps,
  Cleaned,
  PollutionEvents,
  CoinsOwn,
  CoinsOther,
  IronMined,
  GoldCompleted,
  GoldRewardedMiners,
  GoldReverted,
  RedEaten,
  GreenEaten,
  BlueEaten,
  OrangeEaten,
  TokensCollected,
  TokensGiven,
  TokensReceived,
  TokensConsumed,
  CoopCollected,
  DefectCollected,
  Interactions,
  Count,
};
inline constexpr std::size_t kStatCount = static_cast<std::size_t>(Stat::Count);

struct EnvState {
  std::shared_ptr<const EnvConfig> config;
  std::shared_ptr<const MapInfo> info;
  GridState grid;
  std::vector<AgentCore> agents;
  Rng rng;
  std::vector<int> patch_apples;  // live apples per harvest patch
  int dirt_count = 0;
  std::vector<GoldWindow> gold_windows;
  std::vector<Inventory> inventory;
  std::array<std::int64_t, kStatCount> stats{};

  int num_agents() const { return static_cast<int>(agents.size()); }
  std::int64_t step() const { return grid.step; }
  const EnvParams& params() const { return config->params; }
  int river_count() const { return static_cast<int>(info->river_cells.size()); }
  std::int64_t stat(Stat s) const { return stats[static_cast<std::size_t>(s)]; }
  std::int64_t& stat(Stat s) { return stats[static_cast<std::size_t>(s)]; }
};

struct StepOutput {
  std::vector<Observation> obs;
  std::vector<double> rewards;
  bool done = false;
  std::vector<MetricEvent> events;
};

struct ResetResult {
  EnvState state;
  std::vector<Observation> obs;
};

ResetResult reset(std::shared_ptr<const EnvConfig> config, std::uint64_t seed);
ResetResult reset(const EnvConfig& config, std::uint64_t seed);

// One transition. Phases run in a fixed order: timers, turns, moves, beams
// (on a snapshot of positions, applied in agent-id order), consumption on
// the occupied cell, spawning/regrowth, then rewards and observations.
// Throws ContractViolation before touching the state if an action is invalid.
StepOutput step(EnvState& state, std::span<const ActionId> actions);
// Same as step, reusing out's buffers.
void step_into(EnvState& state, std::span<const ActionId> actions, StepOutput& out);

Observation observe_agent(const EnvState& state, int agent);
std::vector<Observation> observe(const EnvState& state);

// Hash over every dynamic field of the state.
std::uint64_t state_hash(const EnvState& state);

// --- individual rules on a live state -------------------------------------
// Each mutates the state and writes rewards/events into out (rewards sized to
// the agent count). They are the building blocks of step().

// Clean Up: past pollution_start, with pollution_prob one clean river tile
// (chosen uniformly) becomes polluted. Returns true if a tile was polluted.
bool pollution_tick(EnvState& state);
// Clean beam from agent: first polluted river tile within beam range is cleaned.
bool clean_action(EnvState& state, int agent, StepOutput& out);
// Coins: collector +coin_reward; a foreign colour costs its owner coin_penalty.
// Returns true for an own-colour pickup.
bool coin_pickup(std::span<double> rewards, int collector, int owner, const EnvParams& params);
// Coop Mining: a mine beam landing on ore at hit.
void mine_hit(EnvState& state, int agent, Pos hit, StepOutput& out);
// Coop Mining: settles gold windows whose time is up.
void resolve_gold(EnvState& state, StepOutput& out);
// Mushrooms: agent eats the mushroom kind on its cell.
void mushroom_consume(EnvState& state, int agent, std::uint8_t kind, StepOutput& out);
// Mushrooms: regrowth triggered by one eaten mushroom of kind.
void regrow_mushrooms(EnvState& state, std::uint8_t eaten_kind);
// Gift Refinement.
std::optional<GiftOutcome> gift_transfer(EnvState& state, int giver, int target, StepOutput& out);
int consume_inventory(EnvState& state, int agent, StepOutput& out);
// Prisoner's Dilemma Arena: row zaps col. Returns false when it is a no-op.
bool pd_interact(EnvState& state, int row, int col, StepOutput& out);
// Commons Harvest regrowth; returns apples grown.
int regrow_apples(EnvState& state);
// Clean Up orchard growth; returns apples grown.
int grow_orchard(EnvState& state);
// Stochastic spawns; each returns the number of items placed.
int spawn_coins(EnvState& state);
int spawn_ores(EnvState& state);
int spawn_tokens(EnvState& state);
int regrow_resources(EnvState& state);

}  // namespace ssd
