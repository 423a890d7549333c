#include <doctest.h>

#include "util.hpp"

using namespace hlpg;

namespace {

Arena make_arena(std::vector<std::uint8_t> player, std::vector<bool> accepting,
                 std::vector<std::pair<int, int>> edges) {
  Arena a;
  a.player = std::move(player);
  a.accepting = std::move(accepting);
  a.flags.resize(a.player.size());
  a.out.resize(a.player.size());
  for (auto [s, d] : edges) {
    a.out[s].push_back(static_cast<int>(a.edges.size()));
    a.edges.push_back({s, d, Move{}});
  }
  return a;
}

}  // namespace

TEST_CASE("approach names") {
  for (Approach a : {Approach::Explicit, Approach::Membership, Approach::Canonical})
    CHECK(parse_approach(to_string(a)) == a);
  CHECK_THROWS_AS(parse_approach("symbolic"), std::invalid_argument);
}

TEST_CASE("Büchi solver on small arenas") {
  SUBCASE("single accepting self-loop owned by player 1") {
    Solution s = solve_buchi(make_arena({1}, {true}, {{0, 0}}));
    CHECK(s.realizable);
    CHECK(s.strategy == std::vector<int>{-1});
  }
  SUBCASE("player 0 can steer into the accepting loop") {
    Solution s = solve_buchi(make_arena({0, 0, 0}, {false, true, false}, {{0, 2}, {0, 1}, {1, 1}, {2, 2}}));
    CHECK(s.realizable);
    CHECK(s.strategy[0] == 1);
    CHECK(s.win == std::vector<bool>{true, true, false});
  }
  SUBCASE("player 1 escapes") {
    Solution s = solve_buchi(make_arena({1, 0, 0}, {false, true, false}, {{0, 2}, {0, 1}, {1, 1}, {2, 2}}));
    CHECK_FALSE(s.realizable);
  }
  SUBCASE("accepting node visited only finitely often") {
    Solution s = solve_buchi(make_arena({0, 0}, {true, false}, {{0, 1}, {1, 1}}));
    CHECK_FALSE(s.realizable);
  }
  SUBCASE("player 1 cycle through an accepting node") {
    Solution s = solve_buchi(make_arena({1, 0}, {false, true}, {{0, 1}, {1, 0}, {0, 0}}));
    CHECK_FALSE(s.realizable);  // player 1 may stay at node 0 forever
    Solution t = solve_buchi(make_arena({1, 0}, {false, true}, {{0, 1}, {1, 0}}));
    CHECK(t.realizable);
  }
}

TEST_CASE("terminating initial set gives a one-node arena") {
  World w(parse_game("game T\nclass C = { c }\nplace P env : ( C ) init { ( c ) }\n"));
  for (Approach ap : {Approach::Explicit, Approach::Membership, Approach::Canonical}) {
    auto gg = GameGraph::build(*w.dg, {ap});
    const Arena& a = gg->arena();
    REQUIRE(a.num_nodes() == 1);
    CHECK(a.num_edges() == 1);
    CHECK(a.edges[0].dst == 0);
    CHECK(a.accepting[0]);
    CHECK(solve_buchi(a).realizable);
  }
}

TEST_CASE("arena structure") {
  for (auto make : {+[] { return gen_cs(2); }, +[] { return gen_cm(2, 2); }, +[] { return gen_dw(2); }}) {
    World w(make());
    for (Approach ap : {Approach::Explicit, Approach::Membership, Approach::Canonical}) {
      auto gg = GameGraph::build(*w.dg, {ap});
      const Arena& a = gg->arena();
      for (int v = 0; v < a.num_nodes(); ++v) {
        CHECK(!a.out[v].empty());
        CHECK(a.player[v] == (a.flags[v].env_dependent ? 1 : 0));
        CHECK(a.accepting[v] == a.flags[v].accepting());
        if (a.flags[v].closed()) {
          REQUIRE(a.out[v].size() == 1);
          CHECK(a.edges[a.out[v][0]].dst == v);
        }
        CHECK(gg->resolve(gg->anchor(v)).first == v);
      }
    }
  }
}

TEST_CASE("small instances") {
  World cs1(gen_cs(1));
  for (Approach ap : {Approach::Explicit, Approach::Membership, Approach::Canonical}) {
    auto gg = GameGraph::build(*cs1.dg, {ap});
    CHECK(gg->arena().num_nodes() == 21);
    CHECK(solve_buchi(gg->arena()).realizable);
  }
  World cm(gen_cm(2, 2));
  CHECK_FALSE(solve_buchi(GameGraph::build(*cm.dg, {Approach::Explicit})->arena()).realizable);
  CHECK_FALSE(solve_buchi(GameGraph::build(*cm.dg, {Approach::Canonical})->arena()).realizable);
}

TEST_CASE("builds are deterministic and independent of the thread count") {
  World w(gen_cs(2));
  for (Approach ap : {Approach::Explicit, Approach::Membership, Approach::Canonical}) {
    auto a = GameGraph::build(*w.dg, {ap, 10'000'000, 1});
    auto b = GameGraph::build(*w.dg, {ap, 10'000'000, 4});
    CHECK(a->to_dot() == b->to_dot());
    CHECK(a->to_dot() == GameGraph::build(*w.dg, {ap})->to_dot());
  }
}

TEST_CASE("node cap") {
  World w(gen_cs(2));
  for (Approach ap : {Approach::Explicit, Approach::Membership, Approach::Canonical})
    CHECK_THROWS_AS(GameGraph::build(*w.dg, {ap, 50}), CapExceeded);
}

TEST_CASE("arena DOT export") {
  World w(gen_cs(1));
  std::string dot = GameGraph::build(*w.dg, {Approach::Canonical})->to_dot();
  CHECK(dot.rfind("digraph arena {", 0) == 0);
  CHECK(dot.find("fillcolor=gray") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);
}
