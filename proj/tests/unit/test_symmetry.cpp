#include <doctest.h>

#include <random>
#include <set>

#include "util.hpp"

using namespace hlpg;

TEST_CASE("group sizes") {
  CHECK(enumerate_symmetries(gen_cs(3)).size() == 6);
  CHECK(enumerate_symmetries(gen_cm(2, 3)).size() == 12);
  CHECK(enumerate_symmetries(gen_dw(4)).size() == 4);
  CHECK(enumerate_symmetries(parse_game("game D\nclass D = { dot }\n")).size() == 1);
  CHECK(enumerate_symmetries(parse_game("game S\nclass C = { a b | c }\n")).size() == 2);
  // several static subclasses freeze an ordered class
  CHECK(enumerate_symmetries(parse_game("game S\nclass C ordered = { a b | c }\n")).size() == 1);
}

TEST_CASE("group axioms") {
  for (const SymmetricGame& g : {gen_cs(3), gen_cm(2, 2), gen_dw(3)}) {
    auto group = enumerate_symmetries(g);
    std::set<Symmetry> all(group.begin(), group.end());
    CHECK(all.size() == group.size());
    CHECK(all.count(identity_symmetry(g)));
    for (const Symmetry& s : group) {
      CHECK(all.count(inverse(s)));
      CHECK(compose(s, inverse(s)) == identity_symmetry(g));
      for (const Symmetry& t : group) CHECK(all.count(compose(s, t)));
    }
  }
}

TEST_CASE("cycle notation") {
  SymmetricGame g = gen_cs(3);
  Symmetry s = identity_symmetry(g);
  CHECK(cycle_notation(g, s) == "()");
  std::swap(s.perm[0][0], s.perm[0][1]);
  CHECK(cycle_notation(g, s) == "(c1 c2)");
}

TEST_CASE("applying symmetries to nodes and decision sets") {
  World w(gen_cs(3));
  Symmetry s = identity_symmetry(*w.g);
  std::swap(s.perm[0][0], s.perm[0][1]);
  NodeMap m = lift(w.pt, s);
  CHECK(m.place[w.place("A.(c1,c3)")] == w.place("A.(c2,c3)"));
  CHECK(m.trans[w.trans("a.(c3,c1)")] == w.trans("a.(c3,c2)"));

  DecisionSet d = w.set({{"R.c1", w.mask("R.c1", {"h.c1"})},
                         {"Sys.c1", kTop},
                         {"Sys.c2", kTop},
                         {"Sys.c3", kTop}});
  DecisionSet e = w.set({{"R.c2", w.mask("R.c2", {"h.c2"})},
                         {"Sys.c1", kTop},
                         {"Sys.c2", kTop},
                         {"Sys.c3", kTop}});
  CHECK(w.dg->apply(d, m) == e);
}

TEST_CASE("lifting respects composition") {
  World w(gen_cm(3, 2));
  auto group = enumerate_symmetries(*w.g);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  std::uniform_int_distribution<int> place(0, w.pt.num_places() - 1), trans(0, w.pt.num_transitions() - 1);
  for (int i = 0; i < 100; ++i) {
    const Symmetry& s1 = group[pick(rng)];
    const Symmetry& s2 = group[pick(rng)];
    NodeMap a = lift(w.pt, s1), b = lift(w.pt, s2), ab = lift(w.pt, compose(s2, s1));
    int p = place(rng), t = trans(rng);
    CHECK(ab.place[p] == b.place[a.place[p]]);
    CHECK(ab.trans[t] == b.trans[a.trans[t]]);
  }
}

TEST_CASE("asymmetric initial markings are rejected") {
  World w(parse_game("game A\nclass C = { c d }\nplace P sys : ( C ) init { ( c ) }\n"));
  CHECK_THROWS_AS(check_initial_symmetric(w.pt, enumerate_symmetries(*w.g)), ModelError);
}
