#include "ssd/env/env.hpp"

#include <algorithm>
#include <bit>

#include "ssd/core/errors.hpp"
#include "ssd/core/moves.hpp"
#include "ssd/core/timers.hpp"

namespace ssd {

namespace {

std::uint8_t legend_item(char ch) {
  switch (ch) {
    case 'A': return code::kApple;
    case 'D': return code::kPollution;
    case 'I': return code::kIron;
    case 'G': return code::kGold;
    case 'm': return code::kMushRed;
    case 'g': return code::kMushGreen;
    case 'b': return code::kMushBlue;
    case 'o': return code::kMushOrange;
    case 'T': return code::kToken;
    case 'C': return code::kResCoop;
    case 'X': return code::kResDefect;
    default: return code::kEmpty;
  }
}

Terrain legend_terrain(char ch) {
  switch (ch) {
    case 'W': return Terrain::Wall;
    case 'R':
    case 'D': return Terrain::River;
    case 'P': return Terrain::Spawn;
    default: return Terrain::Floor;
  }
}

// 8-connected components of the initial apple cells.
void label_patches(const GridState& grid, MapInfo& info) {
  info.patch_of.assign(grid.cell_count(), -1);
  for (std::size_t start = 0; start < grid.cell_count(); ++start) {
    if (grid.items[start] != code::kApple || info.patch_of[start] != -1) continue;
    const int id = static_cast<int>(info.patches.size());
    info.patches.emplace_back();
    std::vector<std::size_t> stack{start};
    info.patch_of[start] = id;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      info.patches.back().push_back(idx);
      const Pos p = grid.pos_of(idx);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const Pos q{p.row + dr, p.col + dc};
          if (!grid.in_bounds(q)) continue;
          const auto qi = grid.index(q);
          if (grid.items[qi] == code::kApple && info.patch_of[qi] == -1) {
            info.patch_of[qi] = id;
            stack.push_back(qi);
          }
        }
      }
    }
    std::sort(info.patches.back().begin(), info.patches.back().end());
  }
}

bool uses_zap(EnvKind k) { return is_harvest(k) || k == EnvKind::CleanUp || k == EnvKind::PdArena; }

bool floor_like(const GridState& grid, Pos p) {
  const auto t = grid.terrain_at(p);
  return t == Terrain::Floor || t == Terrain::Spawn;
}

void validate_actions(const EnvState& state, std::span<const ActionId> actions) {
  if (actions.size() != state.agents.size()) {
    throw ContractViolation("step: expected " + std::to_string(state.agents.size()) +
                            " actions, got " + std::to_string(actions.size()));
  }
  const int n_actions = state.config->actions();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= n_actions) {
      throw ContractViolation("step: action " + std::to_string(actions[i]) + " of agent " +
                              std::to_string(i) + " outside [0, " + std::to_string(n_actions) + ")");
    }
  }
}

void fill_inventory(const EnvState& state, int agent, Observation& obs) {
  const auto kind = state.config->kind;
  if (kind == EnvKind::GiftRefinement || kind == EnvKind::PdArena) {
    obs.inventory = state.inventory[static_cast<std::size_t>(agent)];
  }
}

void remove_for(EnvState& state, int agent, std::int64_t duration) {
  remove_agent(state.grid, state.agents[static_cast<std::size_t>(agent)],
               state.grid.step + 1 + duration);
}

int beam_length(const EnvState& state) { return static_cast<int>(state.params().beam_length); }

}  // namespace

ResetResult reset(std::shared_ptr<const EnvConfig> config, std::uint64_t seed) {
  validate(*config);
  const auto& map = config->map;
  EnvState s;
  s.config = config;
  s.rng = Rng(seed);
  s.grid = GridState(map.width, map.height);
  auto info = std::make_shared<MapInfo>();
  for (int r = 0; r < map.height; ++r) {
    for (int c = 0; c < map.width; ++c) {
      const char ch = map.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      const auto idx = s.grid.index({r, c});
      s.grid.terrain[idx] = legend_terrain(ch);
      s.grid.items[idx] = legend_item(ch);
      if (ch == 'P') info->spawn_cells.push_back({r, c});
      if (ch == 'R' || ch == 'D') info->river_cells.push_back(idx);
      if (ch == 'A' && config->kind == EnvKind::CleanUp) info->orchard_cells.push_back(idx);
      if (code::is_mushroom(s.grid.items[idx])) {
        info->mushroom_homes[static_cast<std::size_t>(s.grid.items[idx] - code::kMushRed)].push_back(idx);
      }
      if (ch == 'C') info->coop_homes.push_back(idx);
      if (ch == 'X') info->defect_homes.push_back(idx);
    }
  }
  if (is_harvest(config->kind)) {
    label_patches(s.grid, *info);
    s.patch_apples.reserve(info->patches.size());
    for (const auto& patch : info->patches) s.patch_apples.push_back(static_cast<int>(patch.size()));
  }
  if (config->kind == EnvKind::CleanUp) {
    for (auto idx : info->river_cells) s.dirt_count += (s.grid.items[idx] == code::kPollution);
  }

  // Seeded shuffle of the spawn cells; agent i takes the i-th.
  std::vector<Pos> spawns = info->spawn_cells;
  for (std::size_t i = spawns.size(); i > 1; --i) {
    std::swap(spawns[i - 1], spawns[s.rng.below(static_cast<std::uint32_t>(i))]);
  }
  s.agents.resize(static_cast<std::size_t>(config->num_agents));
  for (int i = 0; i < config->num_agents; ++i) {
    auto& agent = s.agents[static_cast<std::size_t>(i)];
    agent.id = i;
    agent.alive = false;
    agent.orient = static_cast<Dir>(s.rng.below(4));
    place_agent(s.grid, agent, spawns[static_cast<std::size_t>(i)]);
  }
  s.inventory.assign(s.agents.size(), Inventory{});
  s.info = std::move(info);
  ResetResult out{std::move(s), {}};
  out.obs = observe(out.state);
  return out;
}

ResetResult reset(const EnvConfig& config, std::uint64_t seed) {
  return reset(std::make_shared<const EnvConfig>(config), seed);
}

Observation observe_agent(const EnvState& state, int agent) {
  const auto& a = state.agents[static_cast<std::size_t>(agent)];
  Observation obs;
  if (a.alive) {
    obs = extract_observation(state.grid, a);
  } else {
    obs.cells.fill(code::kWall);
    obs.at(kSelfRow, kSelfCol) = code::kSelf;
  }
  fill_inventory(state, agent, obs);
  return obs;
}

std::vector<Observation> observe(const EnvState& state) {
  std::vector<Observation> out(state.agents.size());
  for (int i = 0; i < state.num_agents(); ++i) out[static_cast<std::size_t>(i)] = observe_agent(state, i);
  return out;
}

bool pollution_tick(EnvState& state) {
  const auto& p = state.params();
  if (state.grid.step <= static_cast<std::int64_t>(p.pollution_start)) return false;
  if (!state.rng.bernoulli(p.pollution_prob)) return false;
  const int clean = state.river_count() - state.dirt_count;
  if (clean <= 0) return false;
  int pick = static_cast<int>(state.rng.below(static_cast<std::uint32_t>(clean)));
  for (auto idx : state.info->river_cells) {
    if (state.grid.items[idx] == code::kPollution) continue;
    if (pick-- == 0) {
      state.grid.items[idx] = code::kPollution;
      ++state.dirt_count;
      ++state.stat(Stat::PollutionEvents);
      return true;
    }
  }
  return false;
}

bool clean_action(EnvState& state, int agent, StepOutput& out) {
  const auto& a = state.agents[static_cast<std::size_t>(agent)];
  if (!a.active(state.grid.step)) return false;
  const auto hit = cast_beam(state.grid, a, beam_length(state), [](const GridState& g, Pos p) {
    return g.item_at(p) == code::kPollution;
  });
  if (!hit) return false;
  state.grid.items[state.grid.index(hit->cell)] = code::kEmpty;
  --state.dirt_count;
  ++state.stat(Stat::Cleaned);
  record(out.events, {MetricKind::Cleaned, agent, state.grid.step, 1.0});
  return true;
}

bool coin_pickup(std::span<double> rewards, int collector, int owner, const EnvParams& params) {
  rewards[static_cast<std::size_t>(collector)] += params.coin_reward;
  if (owner == collector) return true;
  if (owner >= 0 && static_cast<std::size_t>(owner) < rewards.size()) {
    rewards[static_cast<std::size_t>(owner)] += params.coin_penalty;
  }
  return false;
}

void mine_hit(EnvState& state, int agent, Pos hit, StepOutput& out) {
  auto& item = state.grid.items[state.grid.index(hit)];
  const std::uint32_t bit = 1u << agent;
  if (item == code::kIron) {
    item = code::kEmpty;
    out.rewards[static_cast<std::size_t>(agent)] += state.params().iron_reward;
    ++state.stat(Stat::IronMined);
  } else if (item == code::kGold) {
    item = code::kGoldPartial;
    state.gold_windows.push_back({state.grid.index(hit), state.grid.step, bit});
  } else if (item == code::kGoldPartial) {
    for (auto& w : state.gold_windows) {
      if (w.cell == state.grid.index(hit)) w.miners |= bit;
    }
  }
}

void resolve_gold(EnvState& state, StepOutput& out) {
  const auto& p = state.params();
  const auto window = static_cast<std::int64_t>(p.gold_window);
  auto& windows = state.gold_windows;
  for (auto it = windows.begin(); it != windows.end();) {
    if (state.grid.step - it->start + 1 < window) {
      ++it;
      continue;
    }
    const int miners = std::popcount(it->miners);
    if (miners >= static_cast<int>(p.gold_min_miners) && miners <= static_cast<int>(p.gold_max_miners)) {
      for (int i = 0; i < state.num_agents(); ++i) {
        if (it->miners & (1u << i)) out.rewards[static_cast<std::size_t>(i)] += p.gold_reward;
      }
      state.grid.items[it->cell] = code::kEmpty;
      ++state.stat(Stat::GoldCompleted);
      state.stat(Stat::GoldRewardedMiners) += miners;
      record(out.events, {MetricKind::GoldMined, -1, state.grid.step, 1.0});
    } else {
      state.grid.items[it->cell] = code::kGold;
      ++state.stat(Stat::GoldReverted);
    }
    it = windows.erase(it);
  }
}

void mushroom_consume(EnvState& state, int agent, std::uint8_t kind, StepOutput& out) {
  const auto& p = state.params();
  const int n = state.num_agents();
  auto& rewards = out.rewards;
  double digest = 0;
  switch (kind) {
    case code::kMushRed:
      rewards[static_cast<std::size_t>(agent)] += p.red_reward;
      digest = p.red_digest;
      ++state.stat(Stat::RedEaten);
      break;
    case code::kMushGreen:
      for (auto& r : rewards) r += p.green_reward / n;
      digest = p.green_digest;
      ++state.stat(Stat::GreenEaten);
      break;
    case code::kMushBlue:
      if (n > 1) {
        for (int i = 0; i < n; ++i) {
          if (i != agent) rewards[static_cast<std::size_t>(i)] += p.blue_reward / (n - 1);
        }
      }
      digest = p.blue_digest;
      ++state.stat(Stat::BlueEaten);
      record(out.events, {MetricKind::BlueEaten, agent, state.grid.step, 1.0});
      break;
    case code::kMushOrange:
      for (auto& r : rewards) r += p.orange_reward;
      digest = p.orange_digest;
      ++state.stat(Stat::OrangeEaten);
      break;
    default: throw ContractViolation("mushroom_consume: not a mushroom code");
  }
  auto& a = state.agents[static_cast<std::size_t>(agent)];
  state.grid.items[state.grid.index(a.pos)] = code::kEmpty;
  if (digest > 0) a.frozen_until = state.grid.step + 1 + static_cast<std::int64_t>(digest);
}

void regrow_mushrooms(EnvState& state, std::uint8_t eaten_kind) {
  const auto& p = state.params();
  auto regrow = [&](std::size_t type, double prob) {
    const auto item = static_cast<std::uint8_t>(code::kMushRed + type);
    for (auto idx : state.info->mushroom_homes[type]) {
      if (state.grid.items[idx] != code::kEmpty) continue;
      if (state.rng.bernoulli(prob)) state.grid.items[idx] = item;
    }
  };
  regrow(0, p.red_regrow_prob);
  if (eaten_kind == code::kMushGreen || eaten_kind == code::kMushBlue) regrow(1, p.green_regrow_prob);
  if (eaten_kind == code::kMushBlue) regrow(2, p.blue_regrow_prob);
  if (eaten_kind == code::kMushOrange) regrow(3, p.orange_regrow_prob);
}

std::optional<GiftOutcome> gift_transfer(EnvState& state, int giver, int target, StepOutput& out) {
  const auto& p = state.params();
  auto result = gift_transfer(state.inventory[static_cast<std::size_t>(giver)],
                              state.inventory[static_cast<std::size_t>(target)],
                              static_cast<int>(p.token_cap), static_cast<int>(p.gift_multiplier));
  if (!result) return result;
  state.stat(Stat::TokensGiven) += result->given;
  state.stat(Stat::TokensReceived) += result->gained;
  record(out.events, {MetricKind::Received, target, state.grid.step, static_cast<double>(result->gained)});
  return result;
}

int consume_inventory(EnvState& state, int agent, StepOutput& out) {
  const int reward = consume_inventory(state.inventory[static_cast<std::size_t>(agent)]);
  out.rewards[static_cast<std::size_t>(agent)] += reward;
  state.stat(Stat::TokensConsumed) += reward;
  return reward;
}

bool pd_interact(EnvState& state, int row, int col, StepOutput& out) {
  const auto& p = state.params();
  auto& a_row = state.agents[static_cast<std::size_t>(row)];
  auto& a_col = state.agents[static_cast<std::size_t>(col)];
  if (!a_row.alive || !a_col.alive || row == col) return false;
  auto& inv_row = state.inventory[static_cast<std::size_t>(row)];
  auto& inv_col = state.inventory[static_cast<std::size_t>(col)];
  const auto outcome =
      pd_payoffs({inv_row[0], inv_row[1]}, {inv_col[0], inv_col[1]}, PayoffMatrix::from(p));
  if (!outcome) return false;
  out.rewards[static_cast<std::size_t>(row)] += outcome->row_reward;
  out.rewards[static_cast<std::size_t>(col)] += outcome->col_reward;
  inv_row = {};
  inv_col = {};
  const auto lo = static_cast<std::int64_t>(p.freeze_min);
  const auto hi = static_cast<std::int64_t>(p.freeze_max);
  remove_for(state, row, state.rng.between(lo, hi));
  remove_for(state, col, state.rng.between(lo, hi));
  ++state.stat(Stat::Interactions);
  return true;
}

int regrow_apples(EnvState& state) {
  auto& grid = state.grid;
  const auto& info = *state.info;
  std::vector<std::size_t> grown;
  for (std::size_t patch = 0; patch < info.patches.size(); ++patch) {
    if (state.patch_apples[patch] == 0) continue;  // an emptied patch stays dead
    for (auto idx : info.patches[patch]) {
      if (grid.items[idx] != code::kEmpty || grid.occupancy[idx] != kNoAgent) continue;
      const double prob = apple_regrowth_prob(count_disc_apples(grid, grid.pos_of(idx)), state.params());
      if (prob > 0.0 && state.rng.bernoulli(prob)) grown.push_back(idx);
    }
  }
  for (auto idx : grown) {
    grid.items[idx] = code::kApple;
    ++state.patch_apples[static_cast<std::size_t>(info.patch_of[idx])];
  }
  return static_cast<int>(grown.size());
}

int grow_orchard(EnvState& state) {
  const auto& p = state.params();
  const double prob = cleanup_growth_prob(state.dirt_count, state.river_count(), p.theta_depletion,
                                          p.theta_restoration, p.apple_growth_max);
  if (prob <= 0.0) return 0;
  int grown = 0;
  for (auto idx : state.info->orchard_cells) {
    if (state.grid.items[idx] != code::kEmpty || state.grid.occupancy[idx] != kNoAgent) continue;
    if (state.rng.bernoulli(prob)) {
      state.grid.items[idx] = code::kApple;
      ++grown;
    }
  }
  return grown;
}

int spawn_coins(EnvState& state) {
  const double p = state.params().coin_respawn_prob;
  const int colors = state.num_agents();
  auto& grid = state.grid;
  int placed = 0;
  if (p <= 0.0) return 0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    if (grid.items[i] != code::kEmpty || grid.occupancy[i] != kNoAgent) continue;
    if (!floor_like(grid, grid.pos_of(i))) continue;
    // Each colour independently at rate p; a cell takes at most one coin.
    const double u = state.rng.uniform();
    if (u < p * colors) {
      const int owner = std::min(static_cast<int>(u / p), colors - 1);
      grid.items[i] = code::coin(owner);
      ++placed;
    }
  }
  return placed;
}

int spawn_ores(EnvState& state) {
  const double p_iron = state.params().iron_respawn_prob;
  const double p_gold = state.params().gold_respawn_prob;
  auto& grid = state.grid;
  int placed = 0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    if (grid.items[i] != code::kEmpty || grid.occupancy[i] != kNoAgent) continue;
    if (!floor_like(grid, grid.pos_of(i))) continue;
    const double u = state.rng.uniform();
    if (u < p_iron) {
      grid.items[i] = code::kIron;
      ++placed;
    } else if (u < p_iron + p_gold) {
      grid.items[i] = code::kGold;
      ++placed;
    }
  }
  return placed;
}

int spawn_tokens(EnvState& state) {
  return spawn_items(state.grid, state.rng, state.params().token_spawn_prob, code::kToken,
                     [](const GridState& g, Pos p) { return floor_like(g, p); });
}

int regrow_resources(EnvState& state) {
  const double p = state.params().resource_regrow_prob;
  auto& grid = state.grid;
  int placed = 0;
  auto regrow = [&](const std::vector<std::size_t>& homes, std::uint8_t item) {
    for (auto idx : homes) {
      if (grid.items[idx] != code::kEmpty || grid.occupancy[idx] != kNoAgent) continue;
      if (state.rng.bernoulli(p)) {
        grid.items[idx] = item;
        ++placed;
      }
    }
  };
  if (p > 0.0) {
    regrow(state.info->coop_homes, code::kResCoop);
    regrow(state.info->defect_homes, code::kResDefect);
  }
  return placed;
}

namespace {

struct PendingBeam {
  int agent;
  ActionId action;
  std::optional<BeamHit> hit;
};

void apply_beams(EnvState& s, std::span<const ActionId> actions, StepOutput& out) {
  const auto kind = s.config->kind;
  const std::int64_t t = s.grid.step;
  const int length = beam_length(s);
  std::vector<PendingBeam> pending;
  for (int i = 0; i < s.num_agents(); ++i) {
    const auto& a = s.agents[static_cast<std::size_t>(i)];
    const ActionId act = actions[static_cast<std::size_t>(i)];
    if (!a.active(t) || act < action::kZap) continue;
    if (act == action::kZap && uses_zap(kind)) {
      pending.push_back({i, act, cast_beam(s.grid, a, length, hits_agent)});
    } else if (kind == EnvKind::GiftRefinement) {
      pending.push_back({i, act, act == action::kGift ? cast_beam(s.grid, a, length, hits_agent)
                                                      : std::nullopt});
    } else if (kind == EnvKind::CoopMining && act == action::kMine) {
      pending.push_back({i, act, cast_beam(s.grid, a, length, [](const GridState& g, Pos p) {
                           return code::is_ore(g.item_at(p));
                         })});
    } else if (kind == EnvKind::CleanUp && act == action::kClean) {
      pending.push_back({i, act, std::nullopt});
    }
  }
  for (const auto& b : pending) {
    if (kind == EnvKind::CleanUp && b.action == action::kClean) {
      clean_action(s, b.agent, out);
    } else if (kind == EnvKind::CoopMining) {
      if (b.hit) mine_hit(s, b.agent, b.hit->cell, out);
    } else if (kind == EnvKind::GiftRefinement) {
      if (b.action == action::kConsume) {
        consume_inventory(s, b.agent, out);
      } else if (b.hit && b.hit->agent != kNoAgent) {
        gift_transfer(s, b.agent, b.hit->agent, out);
      }
    } else if (kind == EnvKind::PdArena) {
      if (b.hit && b.hit->agent != kNoAgent) pd_interact(s, b.agent, b.hit->agent, out);
    } else if (b.hit && b.hit->agent != kNoAgent) {
      auto& target = s.agents[static_cast<std::size_t>(b.hit->agent)];
      if (target.alive) {
        remove_for(s, target.id, static_cast<std::int64_t>(s.params().zap_timeout));
        ++s.stat(Stat::Zaps);
      }
    }
  }
}

void consume_items(EnvState& s, StepOutput& out, std::vector<std::uint8_t>& eaten) {
  const auto kind = s.config->kind;
  const auto& p = s.params();
  const std::int64_t t = s.grid.step;
  for (int i = 0; i < s.num_agents(); ++i) {
    auto& a = s.agents[static_cast<std::size_t>(i)];
    if (!a.active(t)) continue;
    const auto idx = s.grid.index(a.pos);
    auto& item = s.grid.items[idx];
    if (item == code::kEmpty) continue;
    auto& inv = s.inventory[static_cast<std::size_t>(i)];
    if (code::is_coin(item) && kind == EnvKind::Coins) {
      const int owner = code::coin_owner(item);
      const bool own = coin_pickup(out.rewards, i, owner, p);
      ++s.stat(own ? Stat::CoinsOwn : Stat::CoinsOther);
      if (own) record(out.events, {MetricKind::OwnColorCoin, i, t, 1.0});
      item = code::kEmpty;
    } else if (item == code::kApple && (is_harvest(kind) || kind == EnvKind::CleanUp)) {
      out.rewards[static_cast<std::size_t>(i)] += p.apple_reward;
      ++s.stat(Stat::ApplesEaten);
      item = code::kEmpty;
      if (is_harvest(kind)) --s.patch_apples[static_cast<std::size_t>(s.info->patch_of[idx])];
    } else if (code::is_mushroom(item) && kind == EnvKind::Mushrooms) {
      const auto what = item;
      mushroom_consume(s, i, what, out);
      eaten.push_back(what);
    } else if (item == code::kToken && kind == EnvKind::GiftRefinement) {
      if (inv[0] < static_cast<int>(p.token_cap)) {
        ++inv[0];
        ++s.stat(Stat::TokensCollected);
        item = code::kEmpty;
      }
    } else if (kind == EnvKind::PdArena && (item == code::kResCoop || item == code::kResDefect)) {
      if (item == code::kResCoop) {
        ++inv[0];
        ++s.stat(Stat::CoopCollected);
        record(out.events, {MetricKind::CoopCollected, i, t, 1.0});
      } else {
        ++inv[1];
        ++s.stat(Stat::DefectCollected);
      }
      item = code::kEmpty;
    }
  }
}

}  // namespace

void step_into(EnvState& s, std::span<const ActionId> actions, StepOutput& out) {
  validate_actions(s, actions);
  const auto kind = s.config->kind;
  const std::int64_t t = s.grid.step;
  const std::size_t n = s.agents.size();
  out.rewards.assign(n, 0.0);
  out.events.clear();

  // (1) timers
  tick_timers(s.agents, s.grid, s.info->spawn_cells, s.rng);

  // (2) turns and (3) moves
  std::vector<Pos> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = s.agents[i];
    targets[i] = a.pos;
    if (!a.active(t)) continue;
    const Pos fwd = forward_of(a.orient);
    const Pos right = right_of(a.orient);
    switch (actions[i]) {
      case action::kForward: targets[i] = a.pos + fwd; break;
      case action::kBackward: targets[i] = a.pos + (-1) * fwd; break;
      case action::kStrafeLeft: targets[i] = a.pos + (-1) * right; break;
      case action::kStrafeRight: targets[i] = a.pos + right; break;
      case action::kTurnLeft: a.orient = turn_left(a.orient); break;
      case action::kTurnRight: a.orient = turn_right(a.orient); break;
      default: break;
    }
  }
  resolve_moves(s.grid, s.agents, targets, s.rng);

  // (4) beams
  apply_beams(s, actions, out);

  // (5) consumption
  std::vector<std::uint8_t> eaten;
  consume_items(s, out, eaten);

  // (6) regrowth and spawning
  switch (kind) {
    case EnvKind::Coins: spawn_coins(s); break;
    case EnvKind::HarvestOpen:
    case EnvKind::HarvestClosed:
    case EnvKind::HarvestPartnership: regrow_apples(s); break;
    case EnvKind::CleanUp:
      pollution_tick(s);
      grow_orchard(s);
      break;
    case EnvKind::CoopMining:
      resolve_gold(s, out);
      spawn_ores(s);
      break;
    case EnvKind::Mushrooms:
      for (auto what : eaten) regrow_mushrooms(s, what);
      break;
    case EnvKind::GiftRefinement: spawn_tokens(s); break;
    case EnvKind::PdArena: regrow_resources(s); break;
  }
  if (is_harvest(kind)) {
    int apples = 0;
    for (int count : s.patch_apples) apples += count;
    record(out.events, {MetricKind::ApplesOnMap, -1, t, static_cast<double>(apples)});
  }

  // (7) bookkeeping and observations
  s.grid.step = t + 1;
  out.done = s.grid.step >= s.config->episode_len;
  out.obs.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.obs[i] = observe_agent(s, static_cast<int>(i));
}

StepOutput step(EnvState& state, std::span<const ActionId> actions) {
  StepOutput out;
  step_into(state, actions, out);
  return out;
}

std::uint64_t state_hash(const EnvState& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_bytes = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  auto mix = [&](auto value) { mix_bytes(&value, sizeof(value)); };
  mix(s.grid.step);
  mix_bytes(s.grid.items.data(), s.grid.items.size());
  mix_bytes(s.grid.occupancy.data(), s.grid.occupancy.size());
  for (const auto& a : s.agents) {
    mix(a.id);
    mix(a.pos.row);
    mix(a.pos.col);
    mix(static_cast<int>(a.orient));
    mix(a.frozen_until);
    mix(static_cast<int>(a.alive));
    mix(a.respawn_at);
  }
  mix(s.rng.key());
  mix(s.rng.counter());
  for (int c : s.patch_apples) mix(c);
  mix(s.dirt_count);
  for (const auto& w : s.gold_windows) {
    mix(w.cell);
    mix(w.start);
    mix(w.miners);
  }
  for (const auto& inv : s.inventory) {
    for (int c : inv) mix(c);
  }
  for (auto v : s.stats) mix(v);
  return h;
}

}  // namespace ssd
