#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hlpg {

// Input is malformed or violates a structural rule of symmetric games.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Exploration left the supported class (second environment token, unsafe marking).
struct ClassViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A configured size cap (transitions, nodes, markings, group size) was exceeded.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ColorClass {
  std::string name;
  bool ordered = false;
  std::vector<std::string> colors;
  std::vector<int> static_of;             // color -> static subclass
  std::vector<std::vector<int>> statics;  // static subclass -> colors, ascending

  int size() const { return static_cast<int>(colors.size()); }
  int succ(int c, int k = 1) const { return (c + k) % size(); }
};

// Arc term: succ^depth(var), or the whole class at this tuple position.
struct Term {
  enum Kind : std::uint8_t { Var, All } kind = Var;
  int var = -1;
  int depth = 0;
  bool operator==(const Term&) const = default;
};
using TermTuple = std::vector<Term>;

struct Literal {
  enum Kind : std::uint8_t { Eq, Neq, In } kind = Eq;
  int a = -1;
  int b = -1;  // second variable, or static subclass index for In
  bool operator==(const Literal&) const = default;
};

struct Place {
  std::string name;
  bool system = false;
  bool bad = false;
  std::vector<int> type;                 // class ids
  std::vector<std::vector<int>> init;    // color tuples
  bool operator==(const Place&) const = default;
};

struct Transition {
  std::string name;
  std::vector<std::string> var_names;
  std::vector<int> var_class;
  std::vector<Literal> guard;
  bool operator==(const Transition&) const = default;
};

struct Arc {
  int place = -1;
  int trans = -1;
  bool into_transition = true;  // place -> transition
  std::vector<TermTuple> tuples;
  bool operator==(const Arc&) const = default;
};

struct SymmetricGame {
  std::string name;
  std::vector<ColorClass> classes;
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<Arc> arcs;

  // Derived indices, filled by finalize().
  std::vector<std::vector<int>> in_arcs, out_arcs;  // per transition
  std::vector<std::vector<int>> place_out_arcs;     // per place: arcs place -> t
  std::vector<bool> env_preset;                     // transition has an env place in its preset

  void finalize();
  int class_index(std::string_view n) const;
  int place_index(std::string_view n) const;
  int transition_index(std::string_view n) const;
};

bool operator==(const ColorClass& a, const ColorClass& b);
bool structurally_equal(const SymmetricGame& a, const SymmetricGame& b);

SymmetricGame parse_game(std::string_view text);
std::string print_game(const SymmetricGame& g);

// Guard and arc evaluation on concrete colors (one color per variable).
bool eval_guard(const SymmetricGame& g, int t, const std::vector<int>& mode);
// Color tuples of one arc under a mode; `all` expands to every color of its class.
std::vector<std::vector<int>> eval_arc(const SymmetricGame& g, const Arc& a, const std::vector<int>& mode);

struct PTGame {
  std::shared_ptr<const SymmetricGame> hl;

  std::vector<std::string> place_name;
  std::vector<int> place_hl;
  std::vector<std::vector<int>> place_colors;
  std::vector<bool> place_system, place_bad;

  std::vector<std::string> trans_name;
  std::vector<int> trans_hl;
  std::vector<std::vector<int>> trans_mode;
  std::vector<std::vector<int>> pre, post;  // sorted place ids
  std::vector<bool> trans_env;              // env place in preset

  std::vector<std::vector<int>> postset;    // place -> sorted transition ids
  std::vector<int> initial;                 // sorted marked places

  int num_places() const { return static_cast<int>(place_name.size()); }
  int num_transitions() const { return static_cast<int>(trans_name.size()); }

  // -1 when the tuple/mode does not name a node (guard false for transitions).
  int place_id(int hl_place, const std::vector<int>& colors) const;
  int transition_id(int hl_trans, const std::vector<int>& mode) const;

  // Mixed-radix code of a mode, unique within the transition.
  std::int64_t mode_code(int hl_trans, const std::vector<int>& mode) const;

  std::vector<std::int64_t> place_base_, trans_base_;
  std::vector<int> place_lookup_, trans_lookup_;
};

PTGame expand(std::shared_ptr<const SymmetricGame> g, std::size_t transition_cap = 1'000'000);

using Marking = std::vector<int>;  // sorted, duplicate-free (safe nets)
bool pt_enabled(const PTGame& pt, const Marking& m, int t);
Marking pt_fire(const PTGame& pt, const Marking& m, int t);

std::string node_name(const SymmetricGame& g, std::string_view base, const std::vector<int>& classes,
                      const std::vector<int>& colors);

std::string pt_to_dot(const PTGame& pt);

}  // namespace hlpg
