#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hlpg/decision.hpp"
#include "hlpg/model.hpp"
#include "hlpg/symmetry.hpp"

namespace hlpg {

struct Subclass {
  int q = 0;     // static subclass
  int card = 1;
  auto operator<=>(const Subclass&) const = default;
};

// Symbolic transition instance t.Z: one dynamic subclass per variable.
struct Inst {
  int trans = -1;
  std::vector<int> args;
  auto operator<=>(const Inst&) const = default;
};

struct RepEntry {
  enum Kind : std::uint8_t { Top, Set, Pending };
  int place = -1;          // high-level place
  std::vector<int> tuple;  // dynamic subclass per type position; -1 marks ◇ in contexts
  Kind kind = Set;
  std::vector<Inst> k;     // sorted, for Set entries
  auto operator<=>(const RepEntry&) const = default;
};

// Dynamic representation (Z, δ̂, D̂); entries sorted by (place, tuple).
struct Rep {
  std::vector<std::vector<Subclass>> subs;
  std::vector<RepEntry> entries;
  bool operator==(const Rep&) const = default;
};

// Per class: color -> dynamic subclass.
struct Assignment {
  std::vector<std::vector<int>> sub;
  bool operator==(const Assignment&) const = default;
};

// Per variable: (j, k), 0-based subclass j and 1-based element index k.
using SymMode = std::vector<std::pair<int, int>>;

struct Canonical {
  Rep rep;
  std::string key;  // canonical serialization
  Symmetry gamma;   // maps the input colors onto instantiate(rep, canonical_assignment(rep))
};

struct SplitResult {
  Rep rep;
  std::vector<std::vector<int>> h;  // per class: new subclass -> original subclass
  std::vector<int> var_piece;       // per variable of the mode: its cardinality-1 piece
};

// Enabled symbolic instance together with the number of concrete modes it stands for.
struct SymInstance {
  int trans = -1;
  SymMode mode;
  long long multiplicity = 1;
};

struct SymAnalysis {
  Flags flags;
  std::vector<SymInstance> enabled;  // committed-enabled instances (empty if ⊤ present)
};

class Canon {
 public:
  explicit Canon(const DecisionGame& dg);

  const DecisionGame& decisions() const { return *dg_; }
  const PTGame& pt() const { return dg_->pt(); }
  const SymmetricGame& hl() const { return *dg_->pt().hl; }

  // --- representations
  std::pair<Rep, Assignment> represent(const DecisionSet& d) const;
  std::vector<RepEntry> context(const Rep& r, int cls, int sub) const;  // sorted, duplicates kept
  Rep minimize(const Rep& r) const;
  std::string serialize(const Rep& r) const;
  Rep order(const Rep& r) const;
  Canonical canonicalize(const DecisionSet& d) const;
  Canonical canonicalize_rep(const Rep& r) const;

  Assignment canonical_assignment(const Rep& r) const;
  bool valid_assignment(const Rep& r, const Assignment& a) const;
  std::vector<Assignment> valid_assignments(const Rep& r) const;
  DecisionSet instantiate(const Rep& r, const Assignment& a) const;
  DecisionSet instantiate(const Rep& r) const { return instantiate(r, canonical_assignment(r)); }
  // True iff instantiate(image of d under a) == d.
  bool represents(const DecisionSet& d, const Assignment& a, const std::vector<std::vector<Subclass>>& subs) const;

  // --- symbolic semantics
  std::vector<SymMode> symbolic_modes(const Rep& r, int t) const;
  SplitResult split(const Rep& r, const std::vector<int>& var_classes, const SymMode& sm) const;
  SplitResult split(const Rep& r, int t, const SymMode& sm) const;
  SplitResult split_full(const Rep& r) const;
  std::vector<Inst> post_instances(const Rep& split_rep, int place, const std::vector<int>& tuple) const;
  bool instance_enabled(const Rep& split_rep, const Inst& inst, bool need_commitment) const;
  // Concrete modes represented by sm (for tests and strategy translation), as PT transition ids.
  std::vector<int> concrete_modes(const Rep& r, int t, const SymMode& sm) const;
  int representative_mode(const Rep& r, int t, const SymMode& sm) const;

  // Flags and enabled instances; each symbolic mode is evaluated on its representative mode.
  SymAnalysis analyze(const Rep& r) const;
  // Same result computed purely on split representations (no instantiation).
  SymAnalysis analyze_symbolic(const Rep& r) const;
  Flags classify_rep(const Rep& r) const { return analyze(r).flags; }

  using Visit = std::function<void(const Move&, Canonical&&)>;
  void top_successors(const Rep& r, const Visit& visit) const;
  void fire_successors(const Rep& r, int t, const SymMode& sm, const Visit& visit) const;
  // Arena successors in generation order, deduplicated by canonical key (first move wins).
  void successors(const Rep& r, const SymAnalysis& a, const Visit& visit) const;

  std::string render(const Rep& r) const;
  std::string render(const RepEntry& e) const;
  std::string render_mode(int t, const SymMode& sm) const;

 private:
  const DecisionGame* dg_;
  std::vector<int> place_rank_, trans_rank_;

  Rep image(const DecisionSet& d, const Assignment& a, const std::vector<std::vector<Subclass>>& subs) const;
  std::vector<std::vector<int>> merge_blocks(const DecisionSet& d, int cls) const;
  std::string serialize_with(const Rep& r, const std::vector<std::vector<int>>& perm) const;
  Rep relabel(const Rep& r, const std::vector<std::vector<int>>& perm) const;
  std::pair<Rep, std::vector<std::vector<int>>> order_with_perm(const Rep& r) const;
  bool guard_satisfiable(const Rep& r, const Inst& inst) const;
  bool arc_matches(const Rep& r, const Arc& arc, const std::vector<int>& args, const std::vector<int>& tuple) const;
  std::vector<std::vector<int>> arc_tuples(const Rep& r, const Arc& arc, const std::vector<int>& args) const;
  // Normalized symbolic modes; fixed_sub pins a variable's subclass (-1: free), seed fixes a prefix.
  void enumerate_modes(const Rep& r, const std::vector<int>& var_classes, const std::vector<int>& fixed_sub,
                       const SymMode& seed, const std::function<void(const SymMode&)>& f) const;
  bool guard_on_mode(const Rep& r, int t, const SymMode& sm, std::size_t offset) const;
  long long multiplicity(const Rep& r, const std::vector<int>& var_classes, const SymMode& sm,
                         std::size_t from) const;
  SplitResult refine(const Rep& r, const std::vector<std::vector<int>>& pieces) const;
  void resolve_choices(const Rep& full, const Move& base_move, const Visit& visit) const;
  bool nondeterministic(const Rep& r) const;
  using Fibers = std::vector<std::vector<std::vector<int>>>;  // class -> subclass -> colors
  Fibers fibers0(const Rep& r) const;
  int pt_place_of(const Fibers& f, int place, const std::vector<int>& tuple) const;
  Inst inst_of(int pt_trans, const Assignment& a) const;
};

}  // namespace hlpg
