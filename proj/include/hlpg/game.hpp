#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hlpg/canon.hpp"
#include "hlpg/decision.hpp"
#include "hlpg/symmetry.hpp"

namespace hlpg {

enum class Approach { Explicit, Membership, Canonical };
std::string to_string(Approach a);
Approach parse_approach(const std::string& s);  // throws std::invalid_argument

struct ArenaEdge {
  int src = -1, dst = -1;
  Move move;  // on the source node's anchor decision set
};

// Büchi game graph: player 1 owns environment-dependent nodes, node 0 is initial.
struct Arena {
  std::vector<Flags> flags;
  std::vector<std::uint8_t> player;
  std::vector<bool> accepting;
  std::vector<ArenaEdge> edges;
  std::vector<std::vector<int>> out;  // edge ids per node

  int num_nodes() const { return static_cast<int>(flags.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_accepting() const;
};

struct BuildOptions {
  Approach approach = Approach::Canonical;
  std::size_t node_cap = 10'000'000;
  unsigned threads = 1;  // >1: level-synchronous parallel successor computation
};

// An arena plus the lookup needed to relate concrete decision sets to nodes.
class GameGraph {
 public:
  static std::unique_ptr<GameGraph> build(const DecisionGame& dg, const BuildOptions& opt);

  const Arena& arena() const { return arena_; }
  Approach approach() const { return approach_; }
  const DecisionGame& decisions() const { return *dg_; }
  const Canon* canon() const { return canon_.get(); }
  std::size_t symmetries() const { return group_size_; }

  // Decision set the node stands for; moves on its edges apply to it.
  DecisionSet anchor(int node) const;
  // Node whose anchor is symmetric to d, with the color map taking d onto that anchor.
  std::pair<int, Symmetry> resolve(const DecisionSet& d) const;

  std::string render_node(int node) const;
  std::string to_dot() const;

 private:
  GameGraph() = default;
  const DecisionGame* dg_ = nullptr;
  Approach approach_ = Approach::Explicit;
  Arena arena_;
  std::unique_ptr<Canon> canon_;
  std::vector<Symmetry> group_;
  std::vector<NodeMap> lifts_;
  std::size_t group_size_ = 1;
  std::vector<DecisionSet> sets_;  // explicit and membership payloads
  std::vector<Rep> reps_;          // canonical payloads
  std::unordered_map<DecisionSet, int, DecisionSetHash> set_index_;
  std::unordered_map<std::string, int> key_index_;

  void build_explicit(const BuildOptions& opt);
  void build_canonical(const BuildOptions& opt);
  void finish_node(int node, const Flags& f);
  void add_edge(int src, int dst, const Move& m);
};

struct Solution {
  std::vector<bool> win;       // player 0 wins from the node
  std::vector<int> strategy;   // chosen edge id at winning player-0 nodes, else -1
  bool realizable = false;     // initial node is winning
};

Solution solve_buchi(const Arena& a);

}  // namespace hlpg
