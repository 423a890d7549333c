#include <doctest.h>

#include "hlpg/strategy.hpp"
#include "util.hpp"

using namespace hlpg;

namespace {

StrategyNet solve_to_net(const World& w, Approach ap) {
  auto gg = GameGraph::build(*w.dg, {ap});
  Solution sol = solve_buchi(gg->arena());
  REQUIRE(sol.realizable);
  return translate(unroll(*gg, sol));
}

// The whole expanded game read as a strategy.
StrategyNet whole_game(const PTGame& pt) {
  StrategyNet s;
  for (int p = 0; p < pt.num_places(); ++p) s.place_label.push_back(p);
  for (int t = 0; t < pt.num_transitions(); ++t) {
    s.trans_label.push_back(t);
    s.pre.push_back(pt.pre[t]);
    s.post.push_back(pt.post[t]);
  }
  s.initial = pt.initial;
  return s;
}

}  // namespace

TEST_CASE("translated strategies are valid") {
  for (auto make : {+[] { return gen_cs(2); }, +[] { return gen_cm(3, 1); }, +[] { return gen_dw(2); }}) {
    World w(make());
    for (Approach ap : {Approach::Explicit, Approach::Membership, Approach::Canonical}) {
      StrategyNet s = solve_to_net(w, ap);
      ValidationReport r = validate_strategy(s, w.pt);
      CHECK(r.ok());
      for (const auto& v : r.violations) MESSAGE(v);
      CHECK(r.markings > 1);
    }
  }
}

TEST_CASE("computers wait to be informed") {
  World w(gen_cs(3));
  StrategyNet s = solve_to_net(w, Approach::Canonical);
  CHECK(validate_strategy(s, w.pt).ok());
  CHECK_FALSE(causally_precedes(s, w.pt, "a", "inf"));
  CHECK(causally_precedes(s, w.pt, "inf", "a"));
  CHECK(causally_precedes(s, w.pt, "d", "h"));
}

TEST_CASE("strategy exports are deterministic") {
  World w(gen_cs(2));
  StrategyNet a = solve_to_net(w, Approach::Canonical), b = solve_to_net(w, Approach::Canonical);
  CHECK(strategy_text(a, w.pt) == strategy_text(b, w.pt));
  CHECK(strategy_dot(a, w.pt) == strategy_dot(b, w.pt));
  CHECK(strategy_dot(a, w.pt).rfind("digraph", 0) == 0);
}

TEST_CASE("validator rejects broken strategies") {
  World w(gen_cs(2));
  SUBCASE("the whole game is not deterministic") {
    ValidationReport r = validate_strategy(whole_game(w.pt), w.pt);
    CHECK_FALSE(r.deterministic);
    CHECK_FALSE(r.winning);  // b reaches the bad place
  }
  SUBCASE("refusing everything deadlocks") {
    StrategyNet s;
    for (int p : w.pt.initial) {
      s.initial.push_back(s.num_places());
      s.place_label.push_back(p);
    }
    ValidationReport r = validate_strategy(s, w.pt);
    CHECK_FALSE(r.deadlock_free);
    CHECK_FALSE(r.justified_refusal);  // d has no system place to refuse it
    CHECK(r.markings == 1);
  }
}
