#include <doctest.h>

#include "util.hpp"

using namespace hlpg;

TEST_CASE("client/server game parses to the expected structure") {
  SymmetricGame g = gen_cs(3);
  REQUIRE(g.classes.size() == 2);
  CHECK(g.classes[0].colors == std::vector<std::string>{"c1", "c2", "c3"});
  CHECK(g.classes[1].size() == 1);
  std::vector<std::string> places, trans;
  for (auto& p : g.places) places.push_back(p.name);
  for (auto& t : g.transitions) trans.push_back(t.name);
  CHECK(places == std::vector<std::string>{"Env", "Sys", "I", "R", "A", "B", "H"});
  CHECK(trans == std::vector<std::string>{"d", "inf", "a", "b", "h"});
  CHECK(g.places[g.place_index("B")].bad);
}

TEST_CASE("printing and parsing round-trips every generator") {
  for (const SymmetricGame& g : {gen_cs(3), gen_dw(4), gen_cm(3, 2)}) {
    SymmetricGame back = parse_game(print_game(g));
    CHECK(structurally_equal(g, back));
    CHECK(print_game(back) == print_game(g));
  }
}

TEST_CASE("degenerate and malformed inputs") {
  SUBCASE("no places") {
    World w(parse_game("game E\nclass C = { c }\n"));
    CHECK(w.pt.num_places() == 0);
    CHECK(w.pt.initial.empty());
  }
  SUBCASE("no transitions") {
    World w(parse_game("game E\nclass C = { c d }\nplace P sys : ( C ) init { ( c ) ( d ) }\n"));
    CHECK(w.pt.num_transitions() == 0);
    CHECK(w.pt.initial.size() == 2);
  }
  SUBCASE("succ on an unordered class") {
    const char* src =
        "game E\nclass C = { c d }\nplace P sys : ( C )\ntrans t vars ( x:C )\narc t -> P : { ( succ(x) ) }\n";
    CHECK_THROWS_WITH_AS(parse_game(src), doctest::Contains("succ on unordered class"), ModelError);
  }
  SUBCASE("other structural errors") {
    CHECK_THROWS_AS(parse_game("game E\nclass C = { c }\nclass C = { d }\n"), ModelError);
    CHECK_THROWS_AS(parse_game("game E\nclass C = { c }\nplace P env bad : ( C )\n"), ModelError);
    CHECK_THROWS_AS(parse_game("game E\nclass C = { c }\nplace P sys : ( C )\ntrans t vars ( x:C )\n"
                               "arc P -> t : { ( y ) }\n"),
                    ModelError);
    CHECK_THROWS_AS(parse_game("game E\nclass C = { c | }\n"), ModelError);
    CHECK_THROWS_AS(parse_game("game E\nclass C = { c }\nplace P sys : ( C ) init { ( c ) ( c ) }\n"), ModelError);
  }
}

TEST_CASE("arc and guard evaluation") {
  SymmetricGame g = gen_cs(3);
  int a = g.transition_index("a");
  const Arc* out = nullptr;
  for (const Arc& arc : g.arcs)
    if (arc.trans == a && !arc.into_transition) out = &arc;
  REQUIRE(out);
  // variables are declared (y, x); mode y=c2, x=c1
  CHECK(eval_arc(g, *out, {1, 0}) == std::vector<std::vector<int>>{{1, 0}});
  CHECK(eval_guard(g, a, {1, 0}));

  SymmetricGame k = parse_game(
      "game K\nclass K ordered = { k1 k2 k3 }\nplace P sys : ( K )\ntrans t vars ( x:K )\n"
      "arc t -> P : { ( succ(x) ) }\n");
  CHECK(eval_arc(k, k.arcs[0], {2}) == std::vector<std::vector<int>>{{0}});

  SymmetricGame q = parse_game(
      "game Q\nclass C = { c1 c2 | c3 }\nplace P sys : ( C )\ntrans t vars ( x:C y:C ) guard x != y & x in C[2]\n"
      "arc P -> t : { ( x ) }\n");
  CHECK(eval_guard(q, 0, {2, 0}));
  CHECK_FALSE(eval_guard(q, 0, {0, 2}));
  CHECK_FALSE(eval_guard(q, 0, {2, 2}));
}

TEST_CASE("expansion of the client/server game") {
  World w(gen_cs(3));
  const PTGame& pt = w.pt;
  CHECK(pt.num_transitions() == 27);
  int a_places = 0;
  for (auto& n : pt.place_name) a_places += n.rfind("A.", 0) == 0;
  CHECK(a_places == 9);

  Marking m = pt.initial;
  REQUIRE(pt_enabled(pt, m, w.trans("d.c1")));
  m = pt_fire(pt, m, w.trans("d.c1"));
  Marking expect{w.place("I.c1"), w.place("Sys.c1"), w.place("Sys.c2"), w.place("Sys.c3")};
  std::sort(expect.begin(), expect.end());
  CHECK(m == expect);

  for (const char* t : {"inf.c1", "a.(c1,c1)", "a.(c2,c1)", "a.(c3,c1)", "h.c1"}) {
    REQUIRE(pt_enabled(pt, m, w.trans(t)));
    m = pt_fire(pt, m, w.trans(t));
  }
  CHECK(m == Marking{w.place("H.c1")});
  for (int t = 0; t < pt.num_transitions(); ++t) CHECK_FALSE(pt_enabled(pt, m, t));
}

TEST_CASE("firing into a marked place is a class violation") {
  auto g = std::make_shared<SymmetricGame>(parse_game(
      "game U\nclass C = { c }\nplace P sys : ( C ) init { ( c ) }\n"
      "place Q sys : ( C ) init { ( c ) }\ntrans t vars ( x:C )\narc P -> t : { ( x ) }\narc t -> Q : { ( x ) }\n"));
  PTGame pt = expand(g);
  CHECK_THROWS_AS(pt_fire(pt, pt.initial, 0), ClassViolation);
  CHECK_THROWS_AS(DecisionGame(pt, Semantics::pruned()), ClassViolation);
}
