#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hlpg/model.hpp"
#include "hlpg/symmetry.hpp"

namespace hlpg {

// Commitment sets are bitmasks over post(place) in id order; kTop marks an unresolved choice.
constexpr std::uint64_t kTop = ~std::uint64_t{0};

struct Entry {
  int place = -1;
  std::uint64_t k = 0;
  auto operator<=>(const Entry&) const = default;
};

struct DecisionSet {
  std::vector<Entry> entries;  // sorted by place
  bool operator==(const DecisionSet&) const = default;
  auto operator<=>(const DecisionSet&) const = default;
};

struct DecisionSetHash {
  std::size_t operator()(const DecisionSet& d) const noexcept;
};

struct Flags {
  bool has_top = false;
  bool env_dependent = false;
  bool bad = false;
  bool deadlock = false;
  bool terminating = false;
  bool nondeterministic = false;
  bool operator==(const Flags&) const = default;

  bool closed() const { return bad || deadlock || terminating || nondeterministic; }
  bool accepting() const { return (terminating || env_dependent) && !deadlock && !nondeterministic && !bad; }
};
std::string to_string(const Flags& f);

// Two knobs distinguish the shipped semantics.
//   pruned (default): only tokens produced by transitions with an environment place in the preset
//     receive ⊤; tokens produced by system-only transitions pick their commitment while firing;
//     commitments never contain two transitions that are co-enabled in a reachable marking.
//   unrestricted: every new system token receives ⊤ and any subset of the postset is allowed.
struct Semantics {
  bool top_after_environment_only = true;
  bool exclude_coenabled = true;

  static Semantics pruned() { return {true, true}; }
  static Semantics unrestricted() { return {false, false}; }
  std::string name() const;
};

// A game move: ⊤-resolution (trans < 0) or a firing; `commit` lists the commitments chosen
// by the move for ⊤ entries or for system tokens created by the firing.
struct Move {
  int trans = -1;
  std::vector<Entry> commit;
  bool operator==(const Move&) const = default;
};

class DecisionGame {
 public:
  DecisionGame(const PTGame& pt, Semantics sem, std::size_t marking_cap = 10'000'000);

  const PTGame& pt() const { return *pt_; }
  const Semantics& semantics() const { return sem_; }

  DecisionSet initial() const;
  Flags classify(const DecisionSet& d) const;
  std::vector<int> enabled(const DecisionSet& d) const;
  bool marking_enables_any(const DecisionSet& d) const;
  Marking marking(const DecisionSet& d) const;

  using Visit = std::function<void(const Move&, DecisionSet&&)>;
  void top_successors(const DecisionSet& d, const Visit& visit) const;
  void fire_successors(const DecisionSet& d, int t, const Visit& visit) const;
  // Successors per the arena rules (⊤ first, else system-only firings, env moves at env-dependent sets).
  void successors(const DecisionSet& d, const Flags& f, const Visit& visit) const;

  // Plain firing: every new system token gets ⊤.
  DecisionSet fire(const DecisionSet& d, int t) const;
  DecisionSet apply_move(const DecisionSet& d, const Move& m) const;

  DecisionSet apply(const DecisionSet& d, const NodeMap& s) const;
  Move apply(const Move& m, const NodeMap& s) const;

  const std::vector<std::uint64_t>& options(int place) const { return options_[place]; }
  std::uint64_t full_mask(int place) const;
  int local_index(int place, int trans) const;  // -1 if trans ∉ post(place)
  bool coenabled(int t1, int t2) const;

  std::string render(const DecisionSet& d) const;
  std::string render(const Move& m) const;

 private:
  const PTGame* pt_;
  Semantics sem_;
  std::vector<std::vector<std::uint64_t>> options_;
  std::vector<std::vector<std::uint64_t>> conflict_;  // per place, per local index: co-enabled partners

  void compute_coenabled(std::size_t cap);
  void add_token(DecisionSet& d, int place, std::uint64_t k, int by_trans) const;
  void set_commitment(DecisionSet& d, const Entry& c) const;
  // Firing without choices; system tokens awaiting a choice get an empty commitment and are listed.
  DecisionSet fire_base(const DecisionSet& d, int t, bool all_top, std::vector<int>* pending) const;
};

}  // namespace hlpg
