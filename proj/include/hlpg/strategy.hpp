#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hlpg/game.hpp"

namespace hlpg {

// Finite labeled net; labels are places and transitions of the expanded game.
struct StrategyNet {
  std::vector<int> place_label;
  std::vector<int> trans_label;
  std::vector<std::vector<int>> pre, post;  // per transition, sorted place ids
  std::vector<int> initial;                 // sorted place ids

  int num_places() const { return static_cast<int>(place_label.size()); }
  int num_transitions() const { return static_cast<int>(trans_label.size()); }
};

// A reachable marking of the strategy: places keyed by label, the concrete decision set it
// stands for, and the color map taking that set onto the anchor of the tree node's arena node.
struct Cut {
  std::vector<std::pair<int, int>> places;  // (label, strategy place), sorted by label
  DecisionSet actual;
  Symmetry beta;
};

struct TreeNode {
  int arena_node = -1;
  int parent = -1;
  std::vector<Cut> cuts;  // sorted by actual decision set
  std::vector<int> children;
  int fold_to = -1;       // ancestor this node folds back to
};

struct StrategyTree {
  std::vector<TreeNode> nodes;
  StrategyNet raw;                 // before place identification
  std::vector<int> place_parent;   // union-find over raw places
};

// Tree of the winning strategy from the initial node; requires sol.realizable.
StrategyTree unroll(const GameGraph& g, const Solution& sol, std::size_t node_cap = 1'000'000);
StrategyNet translate(StrategyTree tree);

struct ValidationReport {
  bool winning = true, deterministic = true, deadlock_free = true, justified_refusal = true, safe = true;
  std::size_t markings = 0;
  std::vector<std::string> violations;
  bool ok() const { return winning && deterministic && deadlock_free && justified_refusal && safe; }
};

ValidationReport validate_strategy(const StrategyNet& s, const PTGame& pt, std::size_t cap = 10'000'000);

// True iff some transition labeled with high-level transition `from` reaches one labeled `to`
// in the flow relation of the strategy.
bool causally_precedes(const StrategyNet& s, const PTGame& pt, const std::string& from, const std::string& to);

std::string strategy_text(const StrategyNet& s, const PTGame& pt);
std::string strategy_dot(const StrategyNet& s, const PTGame& pt);

}  // namespace hlpg
