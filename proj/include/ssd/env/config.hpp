#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssd/reward/shaping.hpp"

namespace ssd {

enum class EnvKind {
  Coins,
  HarvestOpen,
  HarvestClosed,
  HarvestPartnership,
  CleanUp,
  CoopMining,
  Mushrooms,
  GiftRefinement,
  PdArena,
};

inline constexpr int kEnvKindCount = 9;

std::string_view env_name(EnvKind kind);
// Throws ConfigError for names outside the nine-environment set.
EnvKind parse_env_kind(std::string_view name);
std::span<const EnvKind> all_env_kinds();

inline constexpr bool is_harvest(EnvKind k) {
  return k == EnvKind::HarvestOpen || k == EnvKind::HarvestClosed ||
         k == EnvKind::HarvestPartnership;
}

// Action indices. Index 7 is the environment's beam (zap, or gift in gift
// refinement); index 8 is clean / mine / consume where present.
namespace action {
inline constexpr int kNoop = 0;
inline constexpr int kForward = 1;
inline constexpr int kBackward = 2;
inline constexpr int kStrafeLeft = 3;
inline constexpr int kStrafeRight = 4;
inline constexpr int kTurnLeft = 5;
inline constexpr int kTurnRight = 6;
inline constexpr int kZap = 7;
inline constexpr int kGift = 7;
inline constexpr int kClean = 8;
inline constexpr int kMine = 8;
inline constexpr int kConsume = 8;
}  // namespace action

using ActionId = int;

int action_count(EnvKind kind);
int default_num_agents(EnvKind kind);

// Rectangular ASCII layout. Legend: W wall, . floor, P spawn, A apple,
// R river, D polluted river, I iron, G gold, m/g/b/o red/green/blue/orange
// mushroom, T token, C cooperate resource, X defect resource.
struct MapLayout {
  int width = 0;
  int height = 0;
  std::vector<std::string> rows;

  // Rows separated by newlines (or '/' when row_sep is given). Blank lines
  // and trailing whitespace are ignored.
  static MapLayout parse(std::string_view text, char row_sep = '\n');
  std::string to_text(char row_sep = '\n') const;
  int count(char legend) const;

  friend bool operator==(const MapLayout&, const MapLayout&) = default;
};

std::string_view default_map_text(EnvKind kind);

// Every numeric rule, keyed by its config name (see param_table()).
struct EnvParams {
  double beam_length = 3;
  double zap_timeout = 25;
  // coins
  double coin_respawn_prob = 0.0005;
  double coin_reward = 1;
  double coin_penalty = -2;
  // commons harvest
  double apple_reward = 1;
  double regrow_prob_one = 0.001;
  double regrow_prob_two = 0.005;
  double regrow_prob_three = 0.025;
  // clean up
  double pollution_start = 50;
  double pollution_prob = 0.5;
  double theta_depletion = 0.4;
  double theta_restoration = 0.0;
  double apple_growth_max = 0.05;
  // coop mining
  double iron_respawn_prob = 0.0004;
  double gold_respawn_prob = 0.00016;
  double iron_reward = 1;
  double gold_reward = 8;
  double gold_window = 3;
  double gold_min_miners = 2;
  double gold_max_miners = 4;
  // mushrooms
  double red_reward = 1;
  double green_reward = 2;
  double blue_reward = 3;
  double orange_reward = -0.2;
  double red_digest = 10;
  double green_digest = 15;
  double blue_digest = 20;
  double orange_digest = 0;
  double red_regrow_prob = 0.25;
  double green_regrow_prob = 0.4;
  double blue_regrow_prob = 0.6;
  double orange_regrow_prob = 1.0;
  // gift refinement
  double token_spawn_prob = 0.0002;
  double token_cap = 15;
  double gift_multiplier = 3;
  // prisoners dilemma arena: row-player payoffs [[cc, cd], [dc, dd]]
  double pd_cc = 3;
  double pd_cd = -1;
  double pd_dc = 5;
  double pd_dd = 1;
  double freeze_min = 10;
  double freeze_max = 100;
  double resource_regrow_prob = 0.005;

  friend bool operator==(const EnvParams&, const EnvParams&) = default;
};

struct ParamSpec {
  std::string_view key;
  double EnvParams::*field;
  unsigned env_mask;  // bit per EnvKind
  bool integral;
};

std::span<const ParamSpec> param_table();

struct EnvConfig {
  EnvKind kind = EnvKind::Coins;
  int num_agents = 2;
  int episode_len = 1000;
  MapLayout map;
  EnvParams params;

  std::string_view name() const { return env_name(kind); }
  int actions() const { return action_count(kind); }
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Defaults for name merged with overrides. Recognised override keys: the
// env's parameter keys plus num_agents, episode_len, map (a built-in layout
// name, only "default"), map_rows ('/'-separated rows) and map_file.
EnvConfig make_env(std::string_view name, const Overrides& overrides = {});

// Checks config invariants (counts, map legend, spawn cells). Throws ConfigError.
void validate(const EnvConfig& config);

// A full run description: environment plus reward shaping.
struct RunConfig {
  EnvConfig env;
  RewardMode reward;
};

// Flat "key = value" text, '#' starts a comment. Requires an `env` key.
// Reward keys: reward_mode, svo_w, svo_ideal_angle_degrees, svo_target_agents.
RunConfig parse_config_text(std::string_view text);
// Round-trips through parse_config_text.
std::string to_config_text(const RunConfig& run);

}  // namespace ssd
