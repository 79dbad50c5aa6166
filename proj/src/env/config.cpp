#include "ssd/env/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ssd/core/errors.hpp"
#include "ssd/core/grid.hpp"

namespace ssd {

namespace {

constexpr std::array<EnvKind, kEnvKindCount> kAllKinds = {
    EnvKind::Coins,      EnvKind::HarvestOpen, EnvKind::HarvestClosed,
    EnvKind::HarvestPartnership, EnvKind::CleanUp, EnvKind::CoopMining,
    EnvKind::Mushrooms,  EnvKind::GiftRefinement, EnvKind::PdArena,
};

constexpr std::array<std::string_view, kEnvKindCount> kNames = {
    "coins",   "harvest_open", "harvest_closed",  "harvest_partnership", "clean_up",
    "coop_mining", "mushrooms", "gift_refinement", "pd_arena",
};

constexpr unsigned bit(EnvKind k) { return 1u << static_cast<unsigned>(k); }
constexpr unsigned kAll = (1u << kEnvKindCount) - 1;
constexpr unsigned kHarvest =
    bit(EnvKind::HarvestOpen) | bit(EnvKind::HarvestClosed) | bit(EnvKind::HarvestPartnership);
constexpr unsigned kZapping = kHarvest | bit(EnvKind::CleanUp);

constexpr ParamSpec kParams[] = {
    {"beam_length", &EnvParams::beam_length, kAll, true},
    {"zap_timeout", &EnvParams::zap_timeout, kZapping, true},
    {"coin_respawn_prob", &EnvParams::coin_respawn_prob, bit(EnvKind::Coins), false},
    {"coin_reward", &EnvParams::coin_reward, bit(EnvKind::Coins), false},
    {"coin_penalty", &EnvParams::coin_penalty, bit(EnvKind::Coins), false},
    {"apple_reward", &EnvParams::apple_reward, kZapping, false},
    {"regrow_prob_one", &EnvParams::regrow_prob_one, kHarvest, false},
    {"regrow_prob_two", &EnvParams::regrow_prob_two, kHarvest, false},
    {"regrow_prob_three", &EnvParams::regrow_prob_three, kHarvest, false},
    {"pollution_start", &EnvParams::pollution_start, bit(EnvKind::CleanUp), true},
    {"pollution_prob", &EnvParams::pollution_prob, bit(EnvKind::CleanUp), false},
    {"theta_depletion", &EnvParams::theta_depletion, bit(EnvKind::CleanUp), false},
    {"theta_restoration", &EnvParams::theta_restoration, bit(EnvKind::CleanUp), false},
    {"apple_growth_max", &EnvParams::apple_growth_max, bit(EnvKind::CleanUp), false},
    {"iron_respawn_prob", &EnvParams::iron_respawn_prob, bit(EnvKind::CoopMining), false},
    {"gold_respawn_prob", &EnvParams::gold_respawn_prob, bit(EnvKind::CoopMining), false},
    {"iron_reward", &EnvParams::iron_reward, bit(EnvKind::CoopMining), false},
    {"gold_reward", &EnvParams::gold_reward, bit(EnvKind::CoopMining), false},
    {"gold_window", &EnvParams::gold_window, bit(EnvKind::CoopMining), true},
    {"gold_min_miners", &EnvParams::gold_min_miners, bit(EnvKind::CoopMining), true},
    {"gold_max_miners", &EnvParams::gold_max_miners, bit(EnvKind::CoopMining), true},
    {"red_reward", &EnvParams::red_reward, bit(EnvKind::Mushrooms), false},
    {"green_reward", &EnvParams::green_reward, bit(EnvKind::Mushrooms), false},
    {"blue_reward", &EnvParams::blue_reward, bit(EnvKind::Mushrooms), false},
    {"orange_reward", &EnvParams::orange_reward, bit(EnvKind::Mushrooms), false},
    {"red_digest", &EnvParams::red_digest, bit(EnvKind::Mushrooms), true},
    {"green_digest", &EnvParams::green_digest, bit(EnvKind::Mushrooms), true},
    {"blue_digest", &EnvParams::blue_digest, bit(EnvKind::Mushrooms), true},
    {"orange_digest", &EnvParams::orange_digest, bit(EnvKind::Mushrooms), true},
    {"red_regrow_prob", &EnvParams::red_regrow_prob, bit(EnvKind::Mushrooms), false},
    {"green_regrow_prob", &EnvParams::green_regrow_prob, bit(EnvKind::Mushrooms), false},
    {"blue_regrow_prob", &EnvParams::blue_regrow_prob, bit(EnvKind::Mushrooms), false},
    {"orange_regrow_prob", &EnvParams::orange_regrow_prob, bit(EnvKind::Mushrooms), false},
    {"token_spawn_prob", &EnvParams::token_spawn_prob, bit(EnvKind::GiftRefinement), false},
    {"token_cap", &EnvParams::token_cap, bit(EnvKind::GiftRefinement), true},
    {"gift_multiplier", &EnvParams::gift_multiplier, bit(EnvKind::GiftRefinement), true},
    {"pd_cc", &EnvParams::pd_cc, bit(EnvKind::PdArena), false},
    {"pd_cd", &EnvParams::pd_cd, bit(EnvKind::PdArena), false},
    {"pd_dc", &EnvParams::pd_dc, bit(EnvKind::PdArena), false},
    {"pd_dd", &EnvParams::pd_dd, bit(EnvKind::PdArena), false},
    {"freeze_min", &EnvParams::freeze_min, bit(EnvKind::PdArena), true},
    {"freeze_max", &EnvParams::freeze_max, bit(EnvKind::PdArena), true},
    {"resource_regrow_prob", &EnvParams::resource_regrow_prob, bit(EnvKind::PdArena), false},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view text, const std::string& key) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected a number, got '" + std::string(text) + "'", key);
  }
  return value;
}

int parse_int(std::string_view text, const std::string& key) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + std::string(text) + "'",
                      key);
  }
  return value;
}

bool probability_key(std::string_view key) {
  return key.ends_with("_prob");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open map file '" + path + "'", "map_file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void apply_override(EnvConfig& cfg, const std::string& key, std::string_view value) {
  if (key == "num_agents") {
    cfg.num_agents = parse_int(value, key);
  } else if (key == "episode_len") {
    cfg.episode_len = parse_int(value, key);
  } else if (key == "map") {
    if (value != "default") throw ConfigError("unknown built-in map '" + std::string(value) + "'", key);
    cfg.map = MapLayout::parse(default_map_text(cfg.kind));
  } else if (key == "map_rows") {
    cfg.map = MapLayout::parse(value, '/');
  } else if (key == "map_file") {
    cfg.map = MapLayout::parse(read_file(std::string(value)));
  } else {
    for (const auto& spec : kParams) {
      if (spec.key != key) continue;
      if ((spec.env_mask & bit(cfg.kind)) == 0) {
        throw ConfigError("parameter '" + key + "' does not apply to " +
                              std::string(env_name(cfg.kind)), key);
      }
      const double v = parse_double(value, key);
      if (spec.integral && v != static_cast<double>(static_cast<long long>(v))) {
        throw ConfigError("parameter '" + key + "' must be an integer", key);
      }
      cfg.params.*spec.field = v;
      return;
    }
    throw ConfigError("unknown parameter key '" + key + "'", key);
  }
}

std::optional<std::vector<int>> parse_targets(std::string_view value) {
  if (value == "all" || value.empty()) return std::nullopt;
  std::vector<int> ids;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    ids.push_back(parse_int(item, "svo_target_agents"));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return ids;
}

}  // namespace

std::string_view env_name(EnvKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

EnvKind parse_env_kind(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllKinds[i];
  }
  throw ConfigError("unknown environment '" + std::string(name) + "'", "env");
}

std::span<const EnvKind> all_env_kinds() { return kAllKinds; }

int action_count(EnvKind kind) {
  switch (kind) {
    case EnvKind::Coins:
    case EnvKind::Mushrooms: return 7;
    case EnvKind::HarvestOpen:
    case EnvKind::HarvestClosed:
    case EnvKind::HarvestPartnership:
    case EnvKind::PdArena: return 8;
    case EnvKind::CleanUp:
    case EnvKind::CoopMining:
    case EnvKind::GiftRefinement: return 9;
  }
  return 7;
}

int default_num_agents(EnvKind kind) {
  switch (kind) {
    case EnvKind::Coins: return 2;
    case EnvKind::PdArena: return 4;
    default: return 7;
  }
}

MapLayout MapLayout::parse(std::string_view text, char row_sep) {
  MapLayout layout;
  int line_no = 0;
  while (!text.empty()) {
    const auto end = text.find(row_sep);
    auto line = text.substr(0, end);
    ++line_no;
    line = trim(line);
    if (!line.empty()) {
      for (char ch : line) {
        if (std::string_view("W.PARDIGmgboTCX").find(ch) == std::string_view::npos) {
          throw ParseError(std::string("unknown map legend '") + ch + "'", line_no, "map");
        }
      }
      if (!layout.rows.empty() && line.size() != layout.rows.front().size()) {
        throw ParseError("map rows must all have the same width", line_no, "map");
      }
      layout.rows.emplace_back(line);
    }
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  if (layout.rows.empty()) throw ParseError("empty map", line_no, "map");
  layout.height = static_cast<int>(layout.rows.size());
  layout.width = static_cast<int>(layout.rows.front().size());
  return layout;
}

std::string MapLayout::to_text(char row_sep) const {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += row_sep;
    out += rows[i];
  }
  return out;
}

int MapLayout::count(char legend) const {
  int n = 0;
  for (const auto& row : rows) {
    for (char ch : row) n += (ch == legend);
  }
  return n;
}

std::span<const ParamSpec> param_table() { return kParams; }

void validate(const EnvConfig& cfg) {
  if (cfg.episode_len < 1) throw ConfigError("episode_len must be >= 1", "episode_len");
  if (cfg.num_agents < 1 || cfg.num_agents > code::kMaxAgents) {
    throw ConfigError("num_agents must be in [1, " + std::to_string(code::kMaxAgents) + "]",
                      "num_agents");
  }
  if (cfg.map.rows.empty()) throw ConfigError("map is empty", "map");
  if (cfg.map.count('P') < cfg.num_agents) {
    throw ConfigError("map has " + std::to_string(cfg.map.count('P')) + " spawn cells for " +
                          std::to_string(cfg.num_agents) + " agents", "map");
  }
  for (const auto& spec : kParams) {
    const double v = cfg.params.*spec.field;
    if (probability_key(spec.key) && !(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("parameter '" + std::string(spec.key) + "' must lie in [0, 1]",
                        std::string(spec.key));
    }
  }
  const auto& p = cfg.params;
  if (p.beam_length < 1) throw ConfigError("beam_length must be >= 1", "beam_length");
  if (cfg.kind == EnvKind::CleanUp) {
    if (cfg.map.count('R') + cfg.map.count('D') == 0) {
      throw ConfigError("clean_up map needs river cells", "map");
    }
    if (!(p.theta_restoration < p.theta_depletion)) {
      throw ConfigError("theta_restoration must be below theta_depletion", "theta_restoration");
    }
  }
  if (cfg.kind == EnvKind::CoopMining &&
      (p.gold_window < 1 || p.gold_min_miners < 1 || p.gold_max_miners < p.gold_min_miners)) {
    throw ConfigError("invalid gold window parameters", "gold_window");
  }
  if (cfg.kind == EnvKind::GiftRefinement && (p.token_cap < 1 || p.gift_multiplier < 1)) {
    throw ConfigError("token_cap and gift_multiplier must be >= 1", "token_cap");
  }
  if (cfg.kind == EnvKind::PdArena && !(p.freeze_min >= 0 && p.freeze_min <= p.freeze_max)) {
    throw ConfigError("freeze_min must be in [0, freeze_max]", "freeze_min");
  }
}

EnvConfig make_env(std::string_view name, const Overrides& overrides) {
  EnvConfig cfg;
  cfg.kind = parse_env_kind(name);
  cfg.num_agents = default_num_agents(cfg.kind);
  cfg.map = MapLayout::parse(default_map_text(cfg.kind));
  for (const auto& [key, value] : overrides) apply_override(cfg, key, trim(value));
  validate(cfg);
  return cfg;
}

RunConfig parse_config_text(std::string_view text) {
  std::string env;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> overrides;
  std::string reward_mode = "individual";
  double svo_w = 0.0;
  double svo_deg = 0.0;
  std::optional<std::vector<int>> targets;
  int line_no = 0;
  int env_line = 0;
  while (!text.empty() || line_no == 0) {
    const auto end = text.find('\n');
    auto line = text.substr(0, end);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
      const std::string key(trim(line.substr(0, eq)));
      const auto value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParseError("missing key before '='", line_no);
      try {
        if (key == "env") {
          env = std::string(value);
          env_line = line_no;
        } else if (key == "reward_mode") {
          reward_mode = std::string(value);
          parse_reward_kind(reward_mode);
        } else if (key == "svo_w") {
          svo_w = parse_double(value, key);
          if (!(svo_w >= 0.0)) throw ConfigError("svo_w must be nonnegative", key);
        } else if (key == "svo_ideal_angle_degrees") {
          svo_deg = parse_double(value, key);
          if (!(svo_deg >= 0.0 && svo_deg <= 90.0)) {
            throw ConfigError("svo_ideal_angle_degrees must lie in [0, 90]", key);
          }
        } else if (key == "svo_target_agents") {
          targets = parse_targets(value);
        } else {
          overrides.push_back({line_no, {key, std::string(value)}});
        }
      } catch (const ParseError&) {
        throw;
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_no, key);
      }
    }
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  if (env.empty()) throw ParseError("missing required key 'env'", line_no, "env");
  RunConfig run;
  try {
    parse_env_kind(env);
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), env_line, "env");
  }
  run.env = make_env(env);
  for (const auto& [line, kv] : overrides) {
    try {
      apply_override(run.env, kv.first, kv.second);
    } catch (const ParseError&) {
      throw;
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line, kv.first);
    }
  }
  try {
    validate(run.env);
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), 0, e.key());
  }
  const RewardKind kind = parse_reward_kind(reward_mode);
  if (kind == RewardKind::Svo) {
    run.reward = make_svo_mode(svo_deg, svo_w, targets);
  } else {
    run.reward.kind = kind;
  }
  return run;
}

std::string to_config_text(const RunConfig& run) {
  const auto& cfg = run.env;
  std::ostringstream os;
  os << "env = " << env_name(cfg.kind) << "\n";
  os << "num_agents = " << cfg.num_agents << "\n";
  os << "episode_len = " << cfg.episode_len << "\n";
  os << "map_rows = " << cfg.map.to_text('/') << "\n";
  for (const auto& spec : kParams) {
    if (spec.env_mask & bit(cfg.kind)) {
      os << spec.key << " = " << format_number(cfg.params.*spec.field) << "\n";
    }
  }
  os << "reward_mode = " << reward_kind_name(run.reward.kind) << "\n";
  if (run.reward.kind == RewardKind::Svo && run.reward.svo) {
    const auto& svo = *run.reward.svo;
    os << "svo_w = " << format_number(svo.w) << "\n";
    os << "svo_ideal_angle_degrees = " << format_number(svo.angle_degrees) << "\n";
    os << "svo_target_agents = ";
    if (!svo.targets) {
      os << "all";
    } else {
      for (std::size_t i = 0; i < svo.targets->size(); ++i) os << (i ? "," : "") << (*svo.targets)[i];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ssd
