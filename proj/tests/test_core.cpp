#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "ssd/core/beam.hpp"
#include "ssd/core/errors.hpp"
#include "ssd/core/grid.hpp"
#include "ssd/core/moves.hpp"
#include "ssd/core/observation.hpp"
#include "ssd/core/rng.hpp"
#include "ssd/core/timers.hpp"

using namespace ssd;

TEST_CASE("philox2x64-10 matches the reference known-answer vectors") {
  auto a = philox2x64(0, 0, 0);
  CHECK(a.first == 0xca00a0459843d731ULL);
  CHECK(a.second == 0x66c24222c9a845b5ULL);
  auto b = philox2x64(~0ULL, ~0ULL, ~0ULL);
  CHECK(b.first == 0x65b021d60cd8310fULL);
  CHECK(b.second == 0x4d02f3222f86df20ULL);
  auto c = philox2x64(0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL);
  CHECK(c.first == 0x0a5e742c2997341cULL);
  CHECK(c.second == 0xb0f883d38000de5dULL);
}

TEST_CASE("rng streams are deterministic and advance by the draw count") {
  auto [r1, v1] = rng_uniform(Rng(7), 3);
  auto [r2, v2] = rng_uniform(Rng(7), 3);
  CHECK(v1 == v2);
  CHECK(r1 == r2);
  CHECK(r1.counter() == 3);

  auto [r0, empty] = rng_uniform(Rng(7, 11), 0);
  CHECK(empty.empty());
  CHECK(r0 == Rng(7, 11));

  // The functional form continues exactly where the object form would.
  Rng obj(7);
  for (double x : v1) CHECK(obj.uniform() == x);
}

TEST_CASE("uniform draws have mean 1/2") {
  auto [r, v] = rng_uniform(Rng(42), 1'000'000);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  CHECK(std::abs(mean - 0.5) < 0.002);
  CHECK(*std::min_element(v.begin(), v.end()) >= 0.0);
  CHECK(*std::max_element(v.begin(), v.end()) < 1.0);
}

TEST_CASE("below and between stay in range and cover it") {
  Rng rng(3);
  std::array<int, 7> hits{};
  for (int i = 0; i < 70'000; ++i) {
    const auto x = rng.below(7);
    REQUIRE(x < 7);
    ++hits[x];
  }
  for (int h : hits) CHECK(std::abs(h - 10'000) < 400);
  for (int i = 0; i < 1000; ++i) {
    const auto y = rng.between(10, 100);
    CHECK(y >= 10);
    CHECK(y <= 100);
  }
  CHECK(rng.between(5, 5) == 5);
}

TEST_CASE("split streams are independent of later parent draws") {
  Rng parent(99);
  const Rng a = parent.split(1);
  const Rng b = parent.split(2);
  CHECK_FALSE(a == b);
  Rng a2 = Rng(99).split(1);
  Rng a_copy = a;
  for (int i = 0; i < 10; ++i) CHECK(a_copy.next_u64() == a2.next_u64());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 0, 1) != derive_seed(1, 0, 2));
  CHECK(derive_seed(5, 3, 4) == derive_seed(5, 3, 4));
}

// ---------------------------------------------------------------------------

TEST_CASE("place and remove keep occupancy in step with agents") {
  GridState g(4, 3);
  g.terrain[g.index({1, 1})] = Terrain::Wall;
  std::vector<AgentCore> agents(2);
  agents[1].id = 1;
  agents[0].alive = agents[1].alive = false;
  place_agent(g, agents[0], {0, 0});
  place_agent(g, agents[1], {2, 3});
  CHECK(occupancy_consistent(g, agents));
  CHECK_THROWS_AS(place_agent(g, agents[1], {1, 1}), ContractViolation);
  CHECK_THROWS_AS(place_agent(g, agents[1], {0, 0}), ContractViolation);
  remove_agent(g, agents[0], 7);
  CHECK_FALSE(agents[0].alive);
  CHECK(agents[0].respawn_at == 7);
  CHECK(g.agent_at({0, 0}) == kNoAgent);
  CHECK(occupancy_consistent(g, agents));
}

// ---------------------------------------------------------------------------
// Move resolution against a brute-force resolver: the moving set is the
// largest set M such that every member targets an open cell, is the
// best-ranked claimant of it, and targets a cell that is empty or whose
// occupant is in M and is not heading back into the member's cell.

namespace {

std::vector<bool> brute_force_moves(const GridState& g, const std::vector<AgentCore>& agents,
                                    const std::vector<Pos>& targets, const std::vector<int>& rank) {
  const std::size_t n = agents.size();
  std::vector<bool> best(n, false);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      if (targets[i] == agents[i].pos || !g.open(targets[i])) {
        ok = false;
        break;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && targets[j] == targets[i] && targets[j] != agents[j].pos && rank[j] < rank[i]) ok = false;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || agents[j].pos != targets[i]) continue;
        if (!(mask & (1u << j)) || targets[j] == agents[i].pos) ok = false;
      }
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) best[i] = true;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("decide_moves agrees with brute force on every small configuration") {
  constexpr std::array<Pos, 5> kSteps = {{{0, 0}, {-1, 0}, {0, 1}, {1, 0}, {0, -1}}};
  for (int wall = 0; wall < 2; ++wall) {
    GridState g(4, 4);
    if (wall) g.terrain[g.index({1, 2})] = Terrain::Wall;
    std::vector<Pos> cells;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (g.open({r, c})) cells.push_back({r, c});
      }
    }
    long checked = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<std::size_t> pick(n);
      std::iota(pick.begin(), pick.end(), 0);
      // All ordered placements via combinations; ranks cover the orders.
      while (true) {
        std::vector<AgentCore> agents(n);
        GridState grid = g;
        for (std::size_t i = 0; i < n; ++i) {
          agents[i].id = static_cast<int>(i);
          agents[i].alive = false;
          place_agent(grid, agents[i], cells[pick[i]]);
        }
        std::size_t combos = 1;
        for (std::size_t i = 0; i < n; ++i) combos *= 5;
        for (std::size_t code = 0; code < combos; ++code) {
          std::vector<Pos> targets(n);
          std::size_t k = code;
          for (std::size_t i = 0; i < n; ++i) {
            targets[i] = agents[i].pos + kSteps[k % 5];
            k /= 5;
          }
          std::vector<int> rank(n);
          std::iota(rank.begin(), rank.end(), 0);
          do {
            const auto got = decide_moves(grid, agents, targets, rank);
            const auto want = brute_force_moves(grid, agents, targets, rank);
            REQUIRE(got == want);
            // At most one agent per cell afterwards.
            std::set<std::pair<int, int>> after;
            for (std::size_t i = 0; i < n; ++i) {
              const Pos p = got[i] ? targets[i] : agents[i].pos;
              after.insert({p.row, p.col});
            }
            REQUIRE(after.size() == n);
            ++checked;
          } while (std::next_permutation(rank.begin(), rank.end()));
        }
        // next combination
        int i = static_cast<int>(n) - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == cells.size() - n + static_cast<std::size_t>(i)) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    CHECK(checked > 100'000);
  }
}

TEST_CASE("simple move cases") {
  GridState g(3, 3);
  g.terrain[g.index({0, 1})] = Terrain::Wall;
  std::vector<AgentCore> agents(1);
  agents[0].alive = false;
  place_agent(g, agents[0], {1, 1});
  Rng rng(1);
  std::vector<Pos> t{{1, 2}};
  resolve_moves(g, agents, t, rng);
  CHECK(agents[0].pos == Pos{1, 2});
  CHECK(g.agent_at({1, 2}) == 0);
  t = {{0, 2}};
  resolve_moves(g, agents, t, rng);
  CHECK(agents[0].pos == Pos{0, 2});
  t = {{0, 1}};  // wall
  resolve_moves(g, agents, t, rng);
  CHECK(agents[0].pos == Pos{0, 2});
  t = {{2, 2}};  // two cells away
  CHECK_THROWS_AS(resolve_moves(g, agents, t, rng), ContractViolation);
}

TEST_CASE("three-cycles rotate, swaps fail") {
  GridState g(2, 2);
  std::vector<AgentCore> agents(3);
  const std::array<Pos, 3> start = {{{0, 0}, {0, 1}, {1, 1}}};
  for (int i = 0; i < 3; ++i) {
    agents[static_cast<std::size_t>(i)].id = i;
    agents[static_cast<std::size_t>(i)].alive = false;
    place_agent(g, agents[static_cast<std::size_t>(i)], start[static_cast<std::size_t>(i)]);
  }
  // 0 -> (0,1), 1 -> (1,1), 2 -> (1,0): a chain into the free corner.
  std::vector<Pos> chain{{0, 1}, {1, 1}, {1, 0}};
  Rng rng(5);
  resolve_moves(g, agents, chain, rng);
  CHECK(agents[0].pos == Pos{0, 1});
  CHECK(agents[1].pos == Pos{1, 1});
  CHECK(agents[2].pos == Pos{1, 0});

  // Now (0,0) is free; swap 0 and 1.
  std::vector<Pos> swap{{1, 1}, {0, 1}, {1, 0}};
  resolve_moves(g, agents, swap, rng);
  CHECK(agents[0].pos == Pos{0, 1});
  CHECK(agents[1].pos == Pos{1, 1});
  CHECK(occupancy_consistent(g, agents));
}

TEST_CASE("contested cells are won fairly") {
  int first_wins = 0;
  constexpr int kTrials = 10'000;
  Rng rng(2024);
  for (int trial = 0; trial < kTrials; ++trial) {
    GridState g(3, 1);
    std::vector<AgentCore> agents(2);
    agents[1].id = 1;
    agents[0].alive = agents[1].alive = false;
    place_agent(g, agents[0], {0, 0});
    place_agent(g, agents[1], {0, 2});
    std::vector<Pos> t{{0, 1}, {0, 1}};
    resolve_moves(g, agents, t, rng);
    const int at = g.agent_at({0, 1});
    REQUIRE(at != kNoAgent);
    REQUIRE(((agents[0].pos == Pos{0, 1}) != (agents[1].pos == Pos{0, 1})));
    first_wins += (at == 0);
  }
  const double sd = std::sqrt(kTrials * 0.25);
  CHECK(std::abs(first_wins - kTrials / 2) <= 3 * sd);
}

TEST_CASE("draw_priority always consumes n-1 draws") {
  for (std::size_t n : {1u, 2u, 5u, 32u}) {
    Rng rng(1);
    const auto rank = draw_priority(n, rng);
    CHECK(rng.counter() == (n > 0 ? n - 1 : 0));
    std::vector<int> sorted = rank;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(sorted[i] == static_cast<int>(i));
  }
}

// ---------------------------------------------------------------------------

TEST_CASE("beam scan order") {
  GridState g(6, 1);
  std::vector<AgentCore> agents(2);
  agents[1].id = 1;
  agents[0].alive = agents[1].alive = false;
  place_agent(g, agents[0], {0, 0});
  agents[0].orient = Dir::East;

  SUBCASE("wall at distance 1") {
    g.terrain[g.index({0, 1})] = Terrain::Wall;
    place_agent(g, agents[1], {0, 2});
    CHECK_FALSE(cast_beam(g, agents[0], 3, hits_agent));
  }
  SUBCASE("agent at distance 2") {
    place_agent(g, agents[1], {0, 2});
    const auto hit = cast_beam(g, agents[0], 3, hits_agent);
    REQUIRE(hit);
    CHECK(hit->distance == 2);
    CHECK(hit->agent == 1);
  }
  SUBCASE("out of range") {
    place_agent(g, agents[1], {0, 4});
    CHECK_FALSE(cast_beam(g, agents[0], 3, hits_agent));
    CHECK(cast_beam(g, agents[0], 4, hits_agent));
  }
  SUBCASE("map edge") {
    agents[0].orient = Dir::West;
    CHECK_FALSE(cast_beam(g, agents[0], 3, hits_agent));
  }
  SUBCASE("items are transparent, agents absorb") {
    g.items[g.index({0, 1})] = code::kApple;
    g.items[g.index({0, 3})] = code::kPollution;
    auto polluted = [](const GridState& gr, Pos p) { return gr.item_at(p) == code::kPollution; };
    CHECK(cast_beam(g, agents[0], 3, polluted));
    place_agent(g, agents[1], {0, 2});
    CHECK_FALSE(cast_beam(g, agents[0], 3, polluted));
  }
}

// ---------------------------------------------------------------------------

namespace {

// Window cell -> world cell, written out per orientation.
Pos hand_transform(Pos p, Dir d, int r, int c) {
  const int ahead = 9 - r;
  const int right = c - 5;
  switch (d) {
    case Dir::North: return {p.row - ahead, p.col + right};
    case Dir::East: return {p.row + right, p.col + ahead};
    case Dir::South: return {p.row + ahead, p.col - right};
    case Dir::West: return {p.row - right, p.col - ahead};
  }
  return p;
}

GridState random_grid(int w, int h, Rng& rng) {
  GridState g(w, h);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const auto u = rng.below(10);
    if (u == 0) g.terrain[i] = Terrain::Wall;
    else if (u == 1) g.terrain[i] = Terrain::River;
    else if (u < 4) g.items[i] = static_cast<std::uint8_t>(code::kApple + rng.below(8));
  }
  return g;
}

}  // namespace

TEST_CASE("observation matches the hand-written transform for all orientations") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    GridState g = random_grid(15, 13, rng);
    AgentCore a;
    a.alive = false;
    const Pos p{static_cast<int>(rng.below(13)), static_cast<int>(rng.below(15))};
    g.terrain[g.index(p)] = Terrain::Floor;
    place_agent(g, a, p);
    for (Dir d : {Dir::North, Dir::East, Dir::South, Dir::West}) {
      a.orient = d;
      const auto obs = extract_observation(g, a);
      for (int r = 0; r < 11; ++r) {
        for (int c = 0; c < 11; ++c) {
          const Pos w = hand_transform(p, d, r, c);
          std::uint8_t want = code::kWall;
          if (g.in_bounds(w)) {
            const auto idx = g.index(w);
            if (w == p) want = code::kSelf;
            else if (g.items[idx]) want = g.items[idx];
            else if (g.terrain[idx] == Terrain::Wall) want = code::kWall;
            else if (g.terrain[idx] == Terrain::River) want = code::kRiver;
            else want = code::kFloor;
          }
          REQUIRE(obs.at(r, c) == want);
        }
      }
    }
  }
}

TEST_CASE("apple two cells ahead lands at (7,5) in every orientation") {
  for (Dir d : {Dir::North, Dir::East, Dir::South, Dir::West}) {
    GridState g(9, 9);
    AgentCore a;
    a.alive = false;
    place_agent(g, a, {4, 4});
    a.orient = d;
    g.items[g.index(a.pos + 2 * forward_of(d))] = code::kApple;
    const auto obs = extract_observation(g, a);
    CHECK(obs.at(7, 5) == code::kApple);
    CHECK(obs.at(9, 5) == code::kSelf);
  }
}

TEST_CASE("observation on open floor and in a corner") {
  GridState big(30, 30);
  AgentCore a;
  a.alive = false;
  place_agent(big, a, {15, 15});
  const auto obs = extract_observation(big, a);
  for (int i = 0; i < kObsCells; ++i) {
    CHECK(obs.cells[static_cast<std::size_t>(i)] == (i == 9 * 11 + 5 ? code::kSelf : code::kFloor));
  }
  GridState small(3, 3);
  AgentCore b;
  b.alive = false;
  place_agent(small, b, {0, 0});
  b.orient = Dir::North;
  const auto corner = extract_observation(small, b);
  CHECK(corner.at(8, 5) == code::kWall);   // row -1
  CHECK(corner.at(9, 4) == code::kWall);   // col -1
  CHECK(corner.at(10, 6) == code::kFloor);  // (1, 1)
  CHECK(corner.at(0, 0) == code::kWall);
}

TEST_CASE("observation is translation invariant") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    GridState g = random_grid(12, 12, rng);
    const int dr = 3;
    const int dc = 5;
    GridState shifted(12 + dr + 4, 12 + dc + 2, Terrain::Wall);
    for (int r = 0; r < 12; ++r) {
      for (int c = 0; c < 12; ++c) {
        shifted.terrain[shifted.index({r + dr, c + dc})] = g.terrain[g.index({r, c})];
        shifted.items[shifted.index({r + dr, c + dc})] = g.items[g.index({r, c})];
      }
    }
    const Pos p{6, 6};
    g.terrain[g.index(p)] = Terrain::Floor;
    shifted.terrain[shifted.index({p.row + dr, p.col + dc})] = Terrain::Floor;
    AgentCore a;
    AgentCore b;
    a.alive = b.alive = false;
    place_agent(g, a, p);
    place_agent(shifted, b, {p.row + dr, p.col + dc});
    for (Dir d : {Dir::North, Dir::East, Dir::South, Dir::West}) {
      a.orient = b.orient = d;
      CHECK(extract_observation(g, a) == extract_observation(shifted, b));
    }
  }
}

TEST_CASE("turning right rotates the near field the other way") {
  Rng rng(4);
  GridState g = random_grid(9, 9, rng);
  AgentCore a;
  a.alive = false;
  g.terrain[g.index({4, 4})] = Terrain::Floor;
  place_agent(g, a, {4, 4});
  for (Dir d : {Dir::North, Dir::East, Dir::South, Dir::West}) {
    a.orient = d;
    const auto before = extract_observation(g, a);
    a.orient = turn_right(d);
    const auto after = extract_observation(g, a);
    // A cell at (ahead, right) becomes (ahead', right') = (right, -ahead).
    for (int ahead = -1; ahead <= 1; ++ahead) {
      for (int right = -1; right <= 1; ++right) {
        CHECK(before.at(9 - ahead, 5 + right) == after.at(9 - right, 5 - ahead));
      }
    }
  }
}

// ---------------------------------------------------------------------------

TEST_CASE("tick_timers boundaries") {
  GridState g(4, 1);
  std::vector<Pos> spawns{{0, 0}, {0, 1}, {0, 2}};
  std::vector<AgentCore> agents(2);
  agents[1].id = 1;
  agents[0].alive = agents[1].alive = false;
  place_agent(g, agents[0], {0, 3});
  agents[0].frozen_until = 5;
  g.step = 5;
  agents[1].respawn_at = 5;
  Rng rng(1);
  tick_timers(agents, g, spawns, rng);
  CHECK(agents[0].active(5));
  CHECK(agents[1].alive);
  CHECK(std::find(spawns.begin(), spawns.end(), agents[1].pos) != spawns.end());
  CHECK(occupancy_consistent(g, agents));
  CHECK_FALSE(AgentCore{0, {}, Dir::North, 6, true, 0}.active(5));
}

TEST_CASE("respawn waits for a free spawn cell") {
  GridState g(3, 1);
  std::vector<Pos> spawns{{0, 0}};
  std::vector<AgentCore> agents(2);
  agents[1].id = 1;
  agents[0].alive = agents[1].alive = false;
  place_agent(g, agents[0], {0, 0});
  agents[1].respawn_at = 3;
  g.step = 3;
  Rng rng(1);
  tick_timers(agents, g, spawns, rng);
  CHECK_FALSE(agents[1].alive);
  // The blocker walks off; the next tick respawns.
  std::vector<Pos> t{{0, 1}, agents[1].pos};
  resolve_moves(g, agents, t, rng);
  g.step = 4;
  tick_timers(agents, g, spawns, rng);
  CHECK(agents[1].alive);
  CHECK(agents[1].pos == Pos{0, 0});
}

TEST_CASE("spawn_items") {
  GridState g(5, 2);
  g.terrain[g.index({0, 0})] = Terrain::Wall;
  Rng rng(1);
  auto any = [](const GridState&, Pos) { return true; };
  CHECK(spawn_items(g, rng, 0.0, code::kToken, any) == 0);
  CHECK(std::count(g.items.begin(), g.items.end(), code::kToken) == 0);
  CHECK(spawn_items(g, rng, 1.0, code::kToken, any) == 9);
  CHECK(spawn_items(g, rng, 1.0, code::kToken, any) == 0);
}

TEST_CASE("spawn_items rate over 1e4 cells and 1e3 steps") {
  GridState g(100, 100);
  Rng rng(2);
  long total = 0;
  auto any = [](const GridState&, Pos) { return true; };
  for (int t = 0; t < 1000; ++t) {
    total += spawn_items(g, rng, 0.0005, code::kToken, any);
    std::fill(g.items.begin(), g.items.end(), code::kEmpty);
  }
  const double trials = 1e7;
  const double sd = std::sqrt(trials * 0.0005 * 0.9995);
  CHECK(std::abs(static_cast<double>(total) - trials * 0.0005) <= 3 * sd);
}
