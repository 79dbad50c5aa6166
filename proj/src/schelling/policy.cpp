#include "ssd/schelling/policy.hpp"

#include <array>
#include <optional>

#include "ssd/core/errors.hpp"
#include "ssd/core/beam.hpp"
#include "ssd/env/rules.hpp"

namespace ssd {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Cooperator: return "coop";
    case Role::Defector: return "defect";
    case Role::Random: return "random";
    case Role::External: return "external";
  }
  return "?";
}

Role parse_role(std::string_view name) {
  if (name == "coop" || name == "cooperator") return Role::Cooperator;
  if (name == "defect" || name == "defector") return Role::Defector;
  if (name == "random") return Role::Random;
  if (name == "external") return Role::External;
  throw ConfigError("unknown role '" + std::string(name) + "'", "role");
}

namespace {

bool is_wall(std::uint8_t c) { return c == code::kWall; }
bool is_body(std::uint8_t c) { return c == code::kSelf || code::is_agent(c); }
bool passable(std::uint8_t c) { return !is_wall(c) && !is_body(c); }
bool in_window(int r, int c) { return r >= 0 && r < kObsSize && c >= 0 && c < kObsSize; }

// Window deltas of forward, backward, strafe left, strafe right.
constexpr std::array<std::array<int, 2>, 4> kMoves = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
constexpr std::array<ActionId, 4> kMoveActions = {action::kForward, action::kBackward,
                                                  action::kStrafeLeft, action::kStrafeRight};

struct NoAvoid {
  bool operator()(int, int) const { return false; }
};

// Breadth-first search over the window. With stop_adjacent the path ends next
// to the goal (for beam targets); otherwise it ends on it. Cells flagged by
// avoid are never entered. Returns the first move, or nullopt when no goal is
// reachable.
template <typename Goal, typename Avoid = NoAvoid>
std::optional<ActionId> path_to(const Observation& obs, Goal&& goal, bool stop_adjacent,
                                Avoid&& avoid = {}) {
  std::array<int, kObsCells> first{};
  first.fill(-1);
  std::array<int, kObsCells> queue{};
  int head = 0;
  int tail = 0;
  const int start = kSelfRow * kObsSize + kSelfCol;
  first[start] = 0;
  queue[tail++] = start;
  while (head < tail) {
    const int cur = queue[head++];
    const int r = cur / kObsSize;
    const int c = cur % kObsSize;
    for (int m = 0; m < 4; ++m) {
      const int nr = r + kMoves[m][0];
      const int nc = c + kMoves[m][1];
      if (!in_window(nr, nc)) continue;
      const int next = nr * kObsSize + nc;
      if (first[next] != -1 || next == start) continue;
      const std::uint8_t code = obs.at(nr, nc);
      const int move = cur == start ? m : first[cur];
      if (goal(nr, nc)) {
        if (stop_adjacent) {
          if (cur != start) return kMoveActions[first[cur]];
          continue;
        }
        if (passable(code)) return kMoveActions[move];
      }
      if (!passable(code) || avoid(nr, nc)) continue;
      first[next] = move;
      queue[tail++] = next;
    }
  }
  return std::nullopt;
}

template <typename Goal, typename Avoid = NoAvoid>
std::optional<ActionId> walk_to(const Observation& obs, Goal&& goal, Avoid&& avoid = {}) {
  return path_to(obs, [&](int r, int c) { return goal(obs.at(r, c), r, c); }, false, avoid);
}

// First cell ahead within beam range that stops the beam: walls and the map
// edge yield nullopt, bodies stop it unless they are the target kind.
template <typename Stops>
std::optional<std::uint8_t> beam_hit(const Observation& obs, Stops&& stops) {
  for (int d = 1; d <= kDefaultBeamLength; ++d) {
    const std::uint8_t c = obs.at(kSelfRow - d, kSelfCol);
    if (is_wall(c)) return std::nullopt;
    if (stops(c)) return c;
    if (is_body(c)) return std::nullopt;
  }
  return std::nullopt;
}

template <typename Target>
std::optional<ActionId> turn_toward(const Observation& obs, Target&& target) {
  if (target(obs.at(kSelfRow, kSelfCol - 1))) return action::kTurnLeft;
  if (target(obs.at(kSelfRow, kSelfCol + 1))) return action::kTurnRight;
  if (target(obs.at(kSelfRow + 1, kSelfCol))) return action::kTurnRight;
  return std::nullopt;
}

// Fire if a target is in line, else face an adjacent one, else walk up to the
// nearest visible one.
template <typename Target, typename Avoid = NoAvoid>
std::optional<ActionId> aim(const Observation& obs, ActionId fire, Target&& target, Avoid&& avoid = {}) {
  if (auto hit = beam_hit(obs, target)) return fire;
  if (auto turn = turn_toward(obs, target)) return turn;
  return path_to(obs, [&](int r, int c) { return target(obs.at(r, c)); }, true, avoid);
}

ActionId explore(const Observation& obs, bool forward_ok, Rng& rng) {
  const double u = rng.uniform();
  if (forward_ok && passable(obs.at(kSelfRow - 1, kSelfCol)) && u < 0.8) return action::kForward;
  if (u < 0.9) return action::kTurnLeft;
  return action::kTurnRight;
}

bool agent_code(std::uint8_t c) { return code::is_agent(c); }

int disc_apples(const Observation& obs, int r, int c) {
  int n = 0;
  for (const Pos d : kDiscOffsets) {
    const int rr = r + d.row;
    const int cc = c + d.col;
    if (in_window(rr, cc) && obs.at(rr, cc) == code::kApple) ++n;
  }
  return n;
}

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(int n) : Policy(Role::Random, n) {}
  ActionId act(const Observation&, PolicyMemory& memory, Rng& rng) const override {
    ++memory.steps;
    return static_cast<ActionId>(rng.below(static_cast<std::uint32_t>(action_count())));
  }
};

class ScriptedPolicy final : public Policy {
 public:
  ScriptedPolicy(EnvKind kind, Role role) : Policy(role, ssd::action_count(kind)), kind_(kind) {}

  ActionId act(const Observation& obs, PolicyMemory& memory, Rng& rng) const override {
    ++memory.steps;
    const auto chosen = decide(obs, memory);
    return chosen ? *chosen : explore(obs, !unwanted(obs, memory, kSelfRow - 1, kSelfCol), rng);
  }

 private:
  bool coop() const { return role() == Role::Cooperator; }

  // Items this policy refuses to pick up by walking over them.
  bool unwanted(const Observation& obs, const PolicyMemory& memory, int r, int c) const {
    const std::uint8_t cell = obs.at(r, c);
    switch (kind_) {
      case EnvKind::HarvestOpen:
      case EnvKind::HarvestClosed:
      case EnvKind::HarvestPartnership:
        return coop() && cell == code::kApple && disc_apples(obs, r, c) < 3;
      case EnvKind::Coins:
        return coop() && code::is_coin(cell) && cell != code::coin(memory.agent);
      case EnvKind::Mushrooms:
        if (coop()) return cell == code::kMushRed || cell == code::kMushOrange;
        return cell == code::kMushGreen || cell == code::kMushBlue || cell == code::kMushOrange;
      case EnvKind::PdArena:
        return cell == (coop() ? code::kResDefect : code::kResCoop);
      default:
        return false;
    }
  }

  std::optional<ActionId> decide(const Observation& obs, const PolicyMemory& memory) const {
    const auto avoid = [&](int r, int c) { return unwanted(obs, memory, r, c); };
    const auto apple = [](std::uint8_t c, int, int) { return c == code::kApple; };
    switch (kind_) {
      case EnvKind::HarvestOpen:
      case EnvKind::HarvestClosed:
      case EnvKind::HarvestPartnership:
        if (coop()) {
          return walk_to(obs, [&](std::uint8_t c, int r, int col) {
            return c == code::kApple && disc_apples(obs, r, col) >= 3;
          }, avoid);
        }
        if (beam_hit(obs, agent_code)) return action::kZap;
        return walk_to(obs, apple, avoid);
      case EnvKind::CleanUp:
        if (coop()) {
          if (auto a = aim(obs, action::kClean, [](std::uint8_t c) { return c == code::kPollution; })) return a;
        }
        return walk_to(obs, apple, avoid);
      case EnvKind::Coins: {
        const auto own = code::coin(memory.agent);
        if (coop()) return walk_to(obs, [&](std::uint8_t c, int, int) { return c == own; }, avoid);
        return walk_to(obs, [](std::uint8_t c, int, int) { return code::is_coin(c); }, avoid);
      }
      case EnvKind::CoopMining: {
        const auto wanted = [this](std::uint8_t c) {
          return coop() ? (c == code::kGold || c == code::kGoldPartial) : c == code::kIron;
        };
        if (auto hit = beam_hit(obs, code::is_ore); hit && wanted(*hit)) return action::kMine;
        if (coop()) {
          if (auto a = turn_toward(obs, [](std::uint8_t c) { return c == code::kGoldPartial; })) return a;
        }
        if (auto a = turn_toward(obs, wanted)) return a;
        return path_to(obs, [&](int r, int c) { return wanted(obs.at(r, c)); }, true);
      }
      case EnvKind::Mushrooms:
        if (coop()) {
          return walk_to(obs, [](std::uint8_t c, int, int) {
            return c == code::kMushBlue || c == code::kMushGreen;
          }, avoid);
        }
        return walk_to(obs, [](std::uint8_t c, int, int) { return c == code::kMushRed; }, avoid);
      case EnvKind::GiftRefinement: {
        const auto& inv = obs.inventory;
        if (coop()) {
          if (inv[0] + inv[1] > 0) {
            if (auto a = aim(obs, action::kGift, agent_code)) return a;
          } else if (inv[2] > 0) {
            return action::kConsume;
          }
        } else if (inv[0] + inv[1] + inv[2] > 0) {
          return action::kConsume;
        }
        return walk_to(obs, [](std::uint8_t c, int, int) { return c == code::kToken; }, avoid);
      }
      case EnvKind::PdArena: {
        if (beam_hit(obs, agent_code)) return action::kZap;
        const auto want = coop() ? code::kResCoop : code::kResDefect;
        return walk_to(obs, [&](std::uint8_t c, int, int) { return c == want; }, avoid);
      }
    }
    return std::nullopt;
  }

  EnvKind kind_;
};

}  // namespace

std::shared_ptr<const Policy> scripted_policy(std::string_view env_name, Role role) {
  const EnvKind kind = parse_env_kind(env_name);
  switch (role) {
    case Role::Random: return std::make_shared<RandomPolicy>(action_count(kind));
    case Role::Cooperator:
    case Role::Defector: return std::make_shared<ScriptedPolicy>(kind, role);
    case Role::External: break;
  }
  throw ConfigError("no scripted policy for role '" + std::string(role_name(role)) + "'", "role");
}

}  // namespace ssd
