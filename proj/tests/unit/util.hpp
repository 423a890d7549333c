#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>

#include "hlpg/bench.hpp"
#include "hlpg/canon.hpp"
#include "hlpg/game.hpp"

namespace test {

// A parsed game with its expansion and decision semantics; pinned in memory because
// DecisionGame and Canon keep pointers.
struct World {
  std::shared_ptr<const hlpg::SymmetricGame> g;
  hlpg::PTGame pt;
  std::unique_ptr<hlpg::DecisionGame> dg;
  std::unique_ptr<hlpg::Canon> canon;

  World(hlpg::SymmetricGame game, hlpg::Semantics sem = hlpg::Semantics::pruned())
      : g(std::make_shared<const hlpg::SymmetricGame>(std::move(game))), pt(hlpg::expand(g)) {
    dg = std::make_unique<hlpg::DecisionGame>(pt, sem);
    canon = std::make_unique<hlpg::Canon>(*dg);
  }
  World(const World&) = delete;

  int place(const std::string& n) const {
    auto it = std::find(pt.place_name.begin(), pt.place_name.end(), n);
    if (it == pt.place_name.end()) throw std::out_of_range("no place " + n);
    return static_cast<int>(it - pt.place_name.begin());
  }
  int trans(const std::string& n) const {
    auto it = std::find(pt.trans_name.begin(), pt.trans_name.end(), n);
    if (it == pt.trans_name.end()) throw std::out_of_range("no transition " + n);
    return static_cast<int>(it - pt.trans_name.begin());
  }
  // Commitment mask of `place` allowing the named transitions.
  std::uint64_t mask(const std::string& p, std::initializer_list<const char*> ts) const {
    std::uint64_t k = 0;
    for (const char* t : ts) k |= std::uint64_t{1} << dg->local_index(place(p), trans(t));
    return k;
  }
  hlpg::DecisionSet set(std::initializer_list<std::pair<const char*, std::uint64_t>> es) const {
    hlpg::DecisionSet d;
    for (auto& [p, k] : es) d.entries.push_back({place(p), k});
    std::sort(d.entries.begin(), d.entries.end());
    return d;
  }
};

// Decision sets of the explicit arena, in exploration order.
inline std::vector<hlpg::DecisionSet> reachable(const World& w) {
  auto gg = hlpg::GameGraph::build(*w.dg, {hlpg::Approach::Explicit});
  std::vector<hlpg::DecisionSet> out;
  for (int v = 0; v < gg->arena().num_nodes(); ++v) out.push_back(gg->anchor(v));
  return out;
}

}  // namespace test

using test::World;
