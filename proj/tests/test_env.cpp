#include <doctest.h>

#include <algorithm>
#include <set>

#include "invariants.hpp"
#include "support.hpp"

using namespace ssd;
using namespace ssd::testing;

namespace {

int count_item(const EnvState& s, std::uint8_t item) {
  return static_cast<int>(std::count(s.grid.items.begin(), s.grid.items.end(), item));
}

double sum(const std::vector<double>& v) {
  double t = 0;
  for (double x : v) t += x;
  return t;
}

const MetricEvent* find_event(const StepOutput& out, MetricKind kind) {
  for (const auto& e : out.events) {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

std::vector<ActionId> random_actions(const EnvState& s, Rng& rng) {
  std::vector<ActionId> a(static_cast<std::size_t>(s.num_agents()));
  for (auto& x : a) x = static_cast<ActionId>(rng.below(static_cast<std::uint32_t>(s.config->actions())));
  return a;
}

}  // namespace

TEST_CASE("reset places agents on distinct spawn cells deterministically") {
  for (EnvKind kind : all_env_kinds()) {
    const auto cfg = make_env(env_name(kind));
    auto a = reset(cfg, 5);
    auto b = reset(cfg, 5);
    CHECK(state_hash(a.state) == state_hash(b.state));
    CHECK(a.state.grid == b.state.grid);
    CHECK(a.obs == b.obs);
    CHECK(a.state.step() == 0);
    std::set<std::pair<int, int>> cells;
    for (const auto& agent : a.state.agents) {
      CHECK(agent.alive);
      CHECK(agent.frozen_until == 0);
      CHECK(a.state.grid.terrain_at(agent.pos) == Terrain::Spawn);
      cells.insert({agent.pos.row, agent.pos.col});
    }
    CHECK(cells.size() == a.state.agents.size());
    for (const auto& inv : a.state.inventory) CHECK(inv == Inventory{});
    CHECK(a.obs.size() == static_cast<std::size_t>(cfg.num_agents));
    for (std::size_t i = 0; i < a.obs.size(); ++i) CHECK(a.obs[i].at(9, 5) == code::kSelf);
  }
  CHECK(reset(make_env("clean_up"), 1).state.dirt_count == 0);
}

TEST_CASE("seeds change the placement") {
  const auto cfg = make_env("harvest_open");
  std::set<std::uint64_t> hashes;
  for (std::uint64_t seed = 0; seed < 10; ++seed) hashes.insert(state_hash(reset(cfg, seed).state));
  CHECK(hashes.size() > 5);
}

TEST_CASE("no-ops in a static environment change only the step") {
  auto st = make_state("coins", "WWWWWW/WP..PW/WWWWWW", 2, {{"coin_respawn_prob", "0"}});
  const auto grid_before = st.grid;
  const auto agents_before = st.agents;
  const auto out = step(st, noops(st));
  CHECK(sum(out.rewards) == 0.0);
  CHECK(st.step() == 1);
  auto g = st.grid;
  g.step = grid_before.step;
  CHECK(g == grid_before);
  CHECK(st.agents == agents_before);
}

TEST_CASE("episode ends exactly at episode_len") {
  auto s = reset(make_env("harvest_open"), 3).state;
  for (int t = 1; t < 1000; ++t) REQUIRE_FALSE(step(s, noops(s)).done);
  CHECK(step(s, noops(s)).done);
  auto short_env = reset(make_env("coins", {{"episode_len", "1"}}), 0).state;
  CHECK(step(short_env, noops(short_env)).done);
}

TEST_CASE("invalid actions are rejected before any change") {
  auto s = reset(make_env("clean_up"), 9).state;
  const auto h = state_hash(s);
  auto bad = noops(s);
  bad[3] = 9;
  CHECK_THROWS_AS(step(s, bad), ContractViolation);
  bad[3] = -1;
  CHECK_THROWS_AS(step(s, bad), ContractViolation);
  CHECK_THROWS_AS(step(s, std::vector<ActionId>(3, 0)), ContractViolation);
  CHECK(state_hash(s) == h);
}

TEST_CASE("same seed and actions reproduce the trajectory") {
  for (EnvKind kind : all_env_kinds()) {
    const auto cfg = std::make_shared<const EnvConfig>(make_env(env_name(kind)));
    auto a = reset(cfg, 77).state;
    auto b = reset(cfg, 77).state;
    Rng ra(1);
    Rng rb(1);
    for (int t = 0; t < 300; ++t) {
      const auto oa = step(a, random_actions(a, ra));
      const auto ob = step(b, random_actions(b, rb));
      REQUIRE(oa.obs == ob.obs);
      REQUIRE(oa.rewards == ob.rewards);
      REQUIRE(oa.events == ob.events);
      REQUIRE(state_hash(a) == state_hash(b));
    }
  }
}

// --- commons harvest ----------------------------------------------------------

TEST_CASE("harvest: stepping onto an apple pays 1 and removes it") {
  auto s = make_state("harvest_open", "WWWWWWW/WP.A.PW/W.....W/WWWWWWW", 2);
  put(s, 0, {1, 2}, Dir::East);
  put(s, 1, {2, 5}, Dir::North);
  const auto out = step(s, acts({action::kForward, action::kNoop}));
  CHECK(out.rewards == std::vector<double>{1.0, 0.0});
  CHECK(s.grid.item_at({1, 3}) == code::kEmpty);
  CHECK(s.agents[0].pos == Pos{1, 3});
  const auto* ev = find_event(out, MetricKind::ApplesOnMap);
  REQUIRE(ev);
  CHECK(ev->amount == 0.0);
  CHECK(ev->step == 0);
}

TEST_CASE("harvest: an emptied patch never regrows") {
  auto s = make_state("harvest_open", "WWWWWWW/WP.A.PW/W.....W/WWWWWWW", 2,
                      {{"regrow_prob_one", "1"}, {"regrow_prob_two", "1"}, {"regrow_prob_three", "1"}});
  put(s, 0, {1, 2}, Dir::East);
  step(s, acts({action::kForward, action::kNoop}));
  step(s, acts({action::kBackward, action::kNoop}));
  for (int t = 0; t < 50; ++t) step(s, noops(s));
  CHECK(count_item(s, code::kApple) == 0);
  CHECK(s.patch_apples[0] == 0);
}

TEST_CASE("harvest: a live patch regrows from its neighbours") {
  auto s = make_state("harvest_open", "WWWWWWW/WP.AAPW/W.....W/WWWWWWW", 2, {{"regrow_prob_one", "1"}});
  put(s, 0, {1, 2}, Dir::East);
  put(s, 1, {2, 5}, Dir::North);
  step(s, acts({action::kForward, action::kNoop}));
  // Still standing on the cell: no regrowth under an agent.
  CHECK(s.grid.item_at({1, 3}) == code::kEmpty);
  const auto out = step(s, acts({action::kBackward, action::kNoop}));
  CHECK(s.grid.item_at({1, 3}) == code::kApple);
  CHECK(s.patch_apples[0] == 2);
  CHECK(find_event(out, MetricKind::ApplesOnMap)->amount == 2.0);
}

TEST_CASE("harvest: zapped agents leave for 25 steps") {
  auto s = make_state("harvest_open", "WWWWWWW/WP...PW/W.....W/WWWWWWW", 2);
  put(s, 0, {2, 1}, Dir::East);
  put(s, 1, {2, 3}, Dir::North);
  step(s, acts({action::kZap, action::kNoop}));
  CHECK_FALSE(s.agents[1].alive);
  CHECK(s.agents[1].respawn_at == 26);
  CHECK(s.stat(Stat::Zaps) == 1);
  CHECK(s.grid.agent_at({2, 3}) == kNoAgent);

  const auto dead = observe_agent(s, 1);
  for (int i = 0; i < kObsCells; ++i) {
    CHECK(dead.cells[static_cast<std::size_t>(i)] == (i == 9 * 11 + 5 ? code::kSelf : code::kWall));
  }
  // Its actions are ignored while it is away.
  for (int t = 1; t < 26; ++t) {
    step(s, acts({action::kNoop, action::kForward}));
    REQUIRE_FALSE(s.agents[1].alive);
  }
  step(s, noops(s));
  CHECK(s.agents[1].alive);
  CHECK(s.grid.terrain_at(s.agents[1].pos) == Terrain::Spawn);
}

TEST_CASE("beams fire on a snapshot: mutual zaps both land") {
  auto s = make_state("harvest_open", "WWWWWWW/WP...PW/WWWWWWW", 2);
  put(s, 0, {1, 1}, Dir::East);
  put(s, 1, {1, 3}, Dir::West);
  step(s, acts({action::kZap, action::kZap}));
  CHECK_FALSE(s.agents[0].alive);
  CHECK_FALSE(s.agents[1].alive);
}

// --- clean up -------------------------------------------------------------------

namespace {

constexpr const char* kCleanMap = "WWWWWWW/WRRRRRW/W.....W/WP.A.PW/WWWWWWW";

void pollute(EnvState& s, Pos p) {
  set_item(s, p, code::kPollution);
  ++s.dirt_count;
}

}  // namespace

TEST_CASE("clean up: pollution only after the grace period") {
  auto s = make_state("clean_up", kCleanMap, 2, {{"pollution_prob", "1"}});
  s.grid.step = 50;
  CHECK_FALSE(pollution_tick(s));
  CHECK(s.dirt_count == 0);
  s.grid.step = 51;
  CHECK(pollution_tick(s));
  CHECK(s.dirt_count == 1);
  for (int i = 0; i < 4; ++i) CHECK(pollution_tick(s));
  CHECK(s.dirt_count == 5);
  CHECK_FALSE(pollution_tick(s));
  CHECK(s.dirt_count == 5);
}

TEST_CASE("clean up: the clean beam removes the nearest pollution") {
  auto s = make_state("clean_up", kCleanMap, 2, {{"apple_growth_max", "0"}});
  put(s, 0, {1, 1}, Dir::East);  // standing on the river
  put(s, 1, {3, 5}, Dir::North);

  auto out = step(s, acts({action::kClean, action::kNoop}));
  CHECK(s.dirt_count == 0);
  CHECK(find_event(out, MetricKind::Cleaned) == nullptr);

  pollute(s, {1, 3});
  pollute(s, {1, 4});
  out = step(s, acts({action::kClean, action::kNoop}));
  CHECK(s.dirt_count == 1);
  CHECK(s.grid.item_at({1, 3}) == code::kEmpty);
  CHECK(s.grid.item_at({1, 4}) == code::kPollution);
  const auto* ev = find_event(out, MetricKind::Cleaned);
  REQUIRE(ev);
  CHECK(ev->agent == 0);

  pollute(s, {1, 2});
  step(s, acts({action::kClean, action::kNoop}));
  CHECK(s.grid.item_at({1, 2}) == code::kEmpty);
  CHECK(s.grid.item_at({1, 4}) == code::kPollution);
}

TEST_CASE("clean up: orchard growth follows the dirt fraction") {
  auto s = make_state("clean_up", kCleanMap, 2, {{"apple_growth_max", "1"}});
  put(s, 0, {2, 1}, Dir::North);
  put(s, 1, {2, 5}, Dir::North);
  set_item(s, {3, 3}, code::kEmpty);
  step(s, noops(s));
  CHECK(s.grid.item_at({3, 3}) == code::kApple);

  set_item(s, {3, 3}, code::kEmpty);
  pollute(s, {1, 1});
  pollute(s, {1, 2});  // 2 of 5 = 0.4, at the depletion threshold
  for (int t = 0; t < 20; ++t) step(s, noops(s));
  CHECK(s.grid.item_at({3, 3}) == code::kEmpty);
}

// --- coins ------------------------------------------------------------------------

TEST_CASE("coins: pickups") {
  const char* map = "WWWWWW/WP..PW/WWWWWW";
  SUBCASE("own colour") {
    auto s = make_state("coins", map, 2, {{"coin_respawn_prob", "0"}});
    put(s, 0, {1, 1}, Dir::East);
    put(s, 1, {1, 4}, Dir::North);
    set_item(s, {1, 2}, code::coin(0));
    const auto out = step(s, acts({action::kForward, action::kNoop}));
    CHECK(out.rewards == std::vector<double>{1.0, 0.0});
    const auto* ev = find_event(out, MetricKind::OwnColorCoin);
    REQUIRE(ev);
    CHECK(ev->agent == 0);
    CHECK(count_item(s, code::coin(0)) == 0);
  }
  SUBCASE("other colour") {
    auto s = make_state("coins", map, 2, {{"coin_respawn_prob", "0"}});
    put(s, 0, {1, 1}, Dir::East);
    put(s, 1, {1, 4}, Dir::North);
    set_item(s, {1, 2}, code::coin(1));
    const auto out = step(s, acts({action::kForward, action::kNoop}));
    CHECK(out.rewards == std::vector<double>{1.0, -2.0});
    CHECK(out.events.empty());
  }
  SUBCASE("simultaneous own-colour pickups") {
    auto s = make_state("coins", map, 2, {{"coin_respawn_prob", "0"}});
    put(s, 0, {1, 1}, Dir::East);
    put(s, 1, {1, 4}, Dir::West);
    set_item(s, {1, 2}, code::coin(0));
    set_item(s, {1, 3}, code::coin(1));
    const auto out = step(s, acts({action::kForward, action::kForward}));
    CHECK(out.rewards == std::vector<double>{1.0, 1.0});
    CHECK(out.events.size() == 2);
  }
}

TEST_CASE("coins: coin_pickup deltas") {
  const EnvParams p;
  std::vector<double> r(3, 0.0);
  CHECK(coin_pickup(r, 2, 2, p));
  CHECK(r == std::vector<double>{0, 0, 1});
  CHECK_FALSE(coin_pickup(r, 0, 1, p));
  CHECK(r == std::vector<double>{1, -2, 1});
}

// --- coop mining --------------------------------------------------------------------

namespace {

constexpr const char* kMineMap = "WWWWWWW/W.....W/W.....W/W..G..W/W.....W/W.....W/WPPPPPW/WWWWWWW";

EnvState mine_state() {
  auto s = make_state("coop_mining", kMineMap, 5, {{"iron_respawn_prob", "0"}, {"gold_respawn_prob", "0"}});
  for (int i = 0; i < 5; ++i) put(s, i, {6, i + 1}, Dir::West);
  return s;
}

std::vector<ActionId> only(int n, std::initializer_list<std::pair<int, ActionId>> list) {
  std::vector<ActionId> a(static_cast<std::size_t>(n), action::kNoop);
  for (auto [i, act] : list) a[static_cast<std::size_t>(i)] = act;
  return a;
}

}  // namespace

TEST_CASE("coop mining: iron pays its miner") {
  auto s = mine_state();
  put(s, 0, {1, 1}, Dir::East);
  set_item(s, {1, 2}, code::kIron);
  const auto out = step(s, only(5, {{0, action::kMine}}));
  CHECK(out.rewards[0] == 1.0);
  CHECK(sum(out.rewards) == 1.0);
  CHECK(s.grid.item_at({1, 2}) == code::kEmpty);
}

TEST_CASE("coop mining: gold needs two to four miners within the window") {
  SUBCASE("lone miner reverts") {
    auto s = mine_state();
    put(s, 0, {2, 3}, Dir::South);
    double total = 0;
    auto out = step(s, only(5, {{0, action::kMine}}));
    CHECK(s.grid.item_at({3, 3}) == code::kGoldPartial);
    total += sum(out.rewards);
    out = step(s, noops(s));
    total += sum(out.rewards);
    out = step(s, noops(s));
    total += sum(out.rewards);
    CHECK(total == 0.0);
    CHECK(s.grid.item_at({3, 3}) == code::kGold);
    CHECK(s.gold_windows.empty());
    CHECK(s.stat(Stat::GoldReverted) == 1);
  }
  SUBCASE("two miners, second on the last window step") {
    auto s = mine_state();
    put(s, 0, {2, 3}, Dir::South);
    put(s, 1, {3, 2}, Dir::East);
    auto out = step(s, only(5, {{0, action::kMine}}));
    CHECK(sum(out.rewards) == 0.0);
    step(s, noops(s));
    out = step(s, only(5, {{1, action::kMine}}));
    CHECK(out.rewards[0] == 8.0);
    CHECK(out.rewards[1] == 8.0);
    CHECK(sum(out.rewards) == 16.0);
    CHECK(s.grid.item_at({3, 3}) == code::kEmpty);
    const auto* ev = find_event(out, MetricKind::GoldMined);
    REQUIRE(ev);
    CHECK(ev->amount == 1.0);
  }
  SUBCASE("second miner one step late") {
    auto s = mine_state();
    put(s, 0, {2, 3}, Dir::South);
    put(s, 1, {3, 2}, Dir::East);
    step(s, only(5, {{0, action::kMine}}));
    step(s, noops(s));
    step(s, noops(s));
    CHECK(s.grid.item_at({3, 3}) == code::kGold);
    const auto out = step(s, only(5, {{1, action::kMine}}));
    CHECK(sum(out.rewards) == 0.0);
    CHECK(s.grid.item_at({3, 3}) == code::kGoldPartial);
  }
  SUBCASE("five miners are too many") {
    auto s = mine_state();
    put(s, 0, {2, 3}, Dir::South);
    put(s, 1, {4, 3}, Dir::North);
    put(s, 2, {3, 2}, Dir::East);
    put(s, 3, {3, 4}, Dir::West);
    put(s, 4, {1, 3}, Dir::South);
    double total = 0;
    total += sum(step(s, only(5, {{0, action::kMine}, {1, action::kMine}, {2, action::kMine}, {3, action::kMine}})).rewards);
    total += sum(step(s, only(5, {{0, action::kStrafeLeft}})).rewards);
    CHECK(s.agents[0].pos == Pos{2, 4});
    total += sum(step(s, only(5, {{4, action::kMine}})).rewards);
    CHECK(total == 0.0);
    CHECK(s.grid.item_at({3, 3}) == code::kGold);
    CHECK(s.stat(Stat::GoldReverted) == 1);
  }
  SUBCASE("zap is a no-op") {
    auto s = mine_state();
    put(s, 0, {2, 3}, Dir::South);
    put(s, 1, {2, 1}, Dir::East);
    step(s, only(5, {{1, action::kZap}}));
    CHECK(s.agents[0].alive);
  }
}

// --- mushrooms -----------------------------------------------------------------------

namespace {

EnvState mushroom_state(int n, Overrides extra = {}) {
  auto s = make_state("mushrooms", "WWWWWWWW/WPPPPP.W/W......W/WWWWWWWW", n, std::move(extra));
  for (int i = 0; i < n; ++i) put(s, i, {1, i + 1}, Dir::South);
  return s;
}

}  // namespace

TEST_CASE("mushrooms: reward splits and digestion") {
  SUBCASE("green is shared by everyone") {
    auto s = mushroom_state(5);
    set_item(s, {2, 1}, code::kMushGreen);
    const auto out = step(s, only(5, {{0, action::kForward}}));
    for (double r : out.rewards) CHECK(r == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(sum(out.rewards) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.agents[0].frozen_until == 16);
    // Digesting: movement is ignored until step 16.
    const Pos at = s.agents[0].pos;
    for (int t = 1; t < 16; ++t) {
      step(s, only(5, {{0, action::kBackward}}));
      REQUIRE(s.agents[0].pos == at);
    }
    step(s, only(5, {{0, action::kBackward}}));
    CHECK(s.agents[0].pos == Pos{1, 1});
  }
  SUBCASE("blue goes to the others") {
    auto s = mushroom_state(5);
    set_item(s, {2, 3}, code::kMushBlue);
    const auto out = step(s, only(5, {{2, action::kForward}}));
    for (int i = 0; i < 5; ++i) CHECK(out.rewards[static_cast<std::size_t>(i)] == (i == 2 ? 0.0 : 0.75));
    const auto* ev = find_event(out, MetricKind::BlueEaten);
    REQUIRE(ev);
    CHECK(ev->agent == 2);
    CHECK(s.agents[2].frozen_until == 21);
  }
  SUBCASE("orange costs everyone") {
    auto s = mushroom_state(3);
    set_item(s, {2, 1}, code::kMushOrange);
    const auto out = step(s, only(3, {{0, action::kForward}}));
    CHECK(out.rewards == std::vector<double>{-0.2, -0.2, -0.2});
    CHECK(s.agents[0].frozen_until == 0);
  }
  SUBCASE("red feeds the eater; frozen agents still share") {
    auto s = mushroom_state(3);
    set_item(s, {2, 1}, code::kMushRed);
    set_item(s, {2, 2}, code::kMushGreen);
    auto out = step(s, only(3, {{0, action::kForward}}));
    CHECK(out.rewards == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(s.agents[0].frozen_until == 11);
    out = step(s, only(3, {{1, action::kForward}}));
    for (double r : out.rewards) CHECK(r == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("mushrooms: regrowth triggers") {
  SUBCASE("red regrows after any meal") {
    auto s = make_state("mushrooms", "WWWWWWW/WPmmmPW/W.....W/WWWWWWW", 2, {{"red_regrow_prob", "1"}});
    put(s, 0, {2, 1}, Dir::North);
    put(s, 1, {2, 5}, Dir::North);
    set_item(s, {1, 3}, code::kEmpty);
    set_item(s, {1, 4}, code::kEmpty);
    set_item(s, {2, 2}, code::kMushOrange);  // not a home cell
    step(s, only(2, {{0, action::kStrafeRight}}));
    CHECK(s.grid.item_at({1, 3}) == code::kMushRed);
    CHECK(s.grid.item_at({1, 4}) == code::kMushRed);
  }
  SUBCASE("red never regrows at probability zero") {
    auto s = make_state("mushrooms", "WWWWWWW/WPmmmPW/W.....W/WWWWWWW", 2, {{"red_regrow_prob", "0"}});
    put(s, 0, {1, 1}, Dir::East);
    put(s, 1, {2, 5}, Dir::North);
    step(s, only(2, {{0, action::kForward}}));
    for (int t = 0; t < 30; ++t) step(s, noops(s));
    CHECK(s.grid.item_at({1, 2}) == code::kEmpty);
  }
  SUBCASE("greens wait for a green or blue meal") {
    auto s = make_state("mushrooms", "WWWWWWW/WPggmPW/W.....W/WWWWWWW", 2, {{"green_regrow_prob", "1"}});
    put(s, 0, {1, 1}, Dir::East);
    put(s, 1, {2, 5}, Dir::North);
    set_item(s, {1, 3}, code::kEmpty);
    step(s, only(2, {{1, action::kForward}}));  // no meal
    CHECK(s.grid.item_at({1, 3}) == code::kEmpty);
    step(s, only(2, {{0, action::kForward}}));  // eats the green at (1,2)
    CHECK(s.grid.item_at({1, 3}) == code::kMushGreen);
    CHECK(s.grid.item_at({1, 2}) == code::kMushGreen);
  }
}

// --- gift refinement -----------------------------------------------------------------

TEST_CASE("gift refinement: collect, gift, consume") {
  auto s = make_state("gift_refinement", "WWWWWWW/WP.T.PW/WWWWWWW", 2, {{"token_spawn_prob", "0"}});
  put(s, 0, {1, 2}, Dir::East);
  put(s, 1, {1, 5}, Dir::West);
  step(s, acts({action::kForward, action::kNoop}));
  CHECK(s.inventory[0] == Inventory{1, 0, 0});
  CHECK(observe_agent(s, 0).inventory == std::array<std::int32_t, 3>{1, 0, 0});

  s.inventory[0] = {2, 0, 0};
  const auto out = step(s, acts({action::kGift, action::kNoop}));
  CHECK(s.inventory[0] == Inventory{0, 0, 0});
  CHECK(s.inventory[1] == Inventory{0, 6, 0});
  const auto* ev = find_event(out, MetricKind::Received);
  REQUIRE(ev);
  CHECK(ev->agent == 1);
  CHECK(ev->amount == 6.0);
  CHECK(sum(out.rewards) == 0.0);

  const auto eat = step(s, acts({action::kNoop, action::kConsume}));
  CHECK(eat.rewards == std::vector<double>{0.0, 6.0});
  CHECK(s.inventory[1] == Inventory{0, 0, 0});

  // Nothing to give: no-op.
  const auto none = step(s, acts({action::kGift, action::kNoop}));
  CHECK(none.events.empty());
}

TEST_CASE("gift refinement: full level-1 stock leaves tokens on the floor") {
  auto s = make_state("gift_refinement", "WWWWWWW/WP.T.PW/WWWWWWW", 2, {{"token_spawn_prob", "0"}});
  put(s, 0, {1, 2}, Dir::East);
  s.inventory[0] = {15, 0, 0};
  step(s, acts({action::kForward, action::kNoop}));
  CHECK(s.inventory[0][0] == 15);
  CHECK(s.grid.item_at({1, 3}) == code::kToken);
}

// --- prisoner's dilemma arena --------------------------------------------------------

TEST_CASE("pd arena: collection and interaction") {
  auto s = make_state("pd_arena", "WWWWWWW/WPC.XPW/W.....W/WWWWWWW", 2, {{"resource_regrow_prob", "0"}});
  put(s, 0, {1, 1}, Dir::East);
  put(s, 1, {1, 5}, Dir::West);
  auto out = step(s, acts({action::kForward, action::kForward}));
  CHECK(s.inventory[0] == Inventory{1, 0, 0});
  CHECK(s.inventory[1] == Inventory{0, 1, 0});
  const auto* ev = find_event(out, MetricKind::CoopCollected);
  REQUIRE(ev);
  CHECK(ev->agent == 0);

  out = step(s, acts({action::kZap, action::kNoop}));
  CHECK(out.rewards == std::vector<double>{-1.0, 5.0});
  CHECK(s.inventory[0] == Inventory{});
  CHECK(s.inventory[1] == Inventory{});
  for (int i = 0; i < 2; ++i) {
    const auto& a = s.agents[static_cast<std::size_t>(i)];
    CHECK_FALSE(a.alive);
    CHECK(a.respawn_at >= 1 + 1 + 10);
    CHECK(a.respawn_at <= 1 + 1 + 100);
  }
}

TEST_CASE("pd arena: zapping with an empty inventory does nothing") {
  auto s = make_state("pd_arena", "WWWWWWW/WP...PW/W.....W/WWWWWWW", 2, {{"resource_regrow_prob", "0"}});
  put(s, 0, {1, 1}, Dir::East);
  put(s, 1, {1, 3}, Dir::West);
  s.inventory[0] = {1, 0, 0};
  const auto out = step(s, acts({action::kZap, action::kNoop}));
  CHECK(sum(out.rewards) == 0.0);
  CHECK(s.agents[1].alive);
  CHECK(s.inventory[0] == Inventory{1, 0, 0});
}

TEST_CASE("pd arena: removal lengths cover the configured range") {
  std::set<std::int64_t> seen;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto s = make_state("pd_arena", "WWWWWWW/WP...PW/WWWWWWW", 2,
                        {{"resource_regrow_prob", "0"}, {"freeze_min", "10"}, {"freeze_max", "12"}}, seed);
    put(s, 0, {1, 1}, Dir::East);
    put(s, 1, {1, 3}, Dir::West);
    s.inventory[0] = {1, 0, 0};
    s.inventory[1] = {0, 1, 0};
    step(s, acts({action::kZap, action::kNoop}));
    seen.insert(s.agents[0].respawn_at - 1);
    seen.insert(s.agents[1].respawn_at - 1);
  }
  CHECK(seen == std::set<std::int64_t>{10, 11, 12});
}

// --- invariants over random play ------------------------------------------------------

TEST_CASE("bookkeeping invariants hold under random play") {
  for (EnvKind kind : all_env_kinds()) {
    CAPTURE(env_name(kind));
    auto s = reset(make_env(env_name(kind)), 31).state;
    Rng rng(8);
    for (int t = 0; t < 2000; ++t) {
      const EnvState before = s;
      const auto out = step(s, random_actions(s, rng));
      const auto violation = step_violation(before, s, out);
      REQUIRE_MESSAGE(violation.empty(), violation);
    }
  }
}
