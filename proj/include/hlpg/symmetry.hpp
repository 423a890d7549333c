#pragma once

#include <string>
#include <vector>

#include "hlpg/model.hpp"

namespace hlpg {

// One color permutation per basic class (rotations of ordered classes are stored as permutations too).
struct Symmetry {
  std::vector<std::vector<int>> perm;
  bool operator==(const Symmetry&) const = default;
  auto operator<=>(const Symmetry&) const = default;
};

Symmetry identity_symmetry(const SymmetricGame& g);
Symmetry compose(const Symmetry& outer, const Symmetry& inner);  // outer after inner
Symmetry inverse(const Symmetry& s);

std::vector<Symmetry> enumerate_symmetries(const SymmetricGame& g, std::size_t cap = 1'000'000);
std::string cycle_notation(const SymmetricGame& g, const Symmetry& s);

// Node permutations of the expanded game induced by a color permutation.
struct NodeMap {
  std::vector<int> place, trans;
};
NodeMap lift(const PTGame& pt, const Symmetry& s);

Marking apply(const NodeMap& m, const Marking& marking);

// Throws ModelError if some symmetry moves the initial marking.
void check_initial_symmetric(const PTGame& pt, const std::vector<Symmetry>& group);

}  // namespace hlpg
