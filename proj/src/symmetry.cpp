#include "hlpg/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace hlpg {

Symmetry identity_symmetry(const SymmetricGame& g) {
  Symmetry s;
  for (const ColorClass& c : g.classes) {
    s.perm.emplace_back(c.size());
    std::iota(s.perm.back().begin(), s.perm.back().end(), 0);
  }
  return s;
}

Symmetry compose(const Symmetry& outer, const Symmetry& inner) {
  Symmetry s = inner;
  for (std::size_t i = 0; i < s.perm.size(); ++i)
    for (auto& c : s.perm[i]) c = outer.perm[i][c];
  return s;
}

Symmetry inverse(const Symmetry& s) {
  Symmetry r = s;
  for (std::size_t i = 0; i < s.perm.size(); ++i)
    for (std::size_t c = 0; c < s.perm[i].size(); ++c) r.perm[i][s.perm[i][c]] = static_cast<int>(c);
  return r;
}

namespace {

std::vector<std::vector<int>> class_group(const ColorClass& c, std::size_t cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> id(c.size());
  std::iota(id.begin(), id.end(), 0);
  if (c.ordered) {
    if (c.statics.size() > 1) return {id};
    for (int r = 0; r < c.size(); ++r) {
      std::vector<int> p(c.size());
      for (int x = 0; x < c.size(); ++x) p[x] = c.succ(x, r);
      out.push_back(std::move(p));
    }
    return out;
  }
  // Product of within-static permutations; collected, then sorted by one-line notation.
  out.push_back(id);
  for (const auto& block : c.statics) {
    std::vector<int> images = block;
    std::vector<std::vector<int>> next;
    do {
      for (const auto& base : out) {
        std::vector<int> p = base;
        for (std::size_t k = 0; k < block.size(); ++k) p[block[k]] = images[k];
        next.push_back(std::move(p));
        if (next.size() > cap) throw CapExceeded("symmetry group of class " + c.name + " exceeds the cap");
      }
    } while (std::next_permutation(images.begin(), images.end()));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Symmetry> enumerate_symmetries(const SymmetricGame& g, std::size_t cap) {
  std::vector<std::vector<std::vector<int>>> per_class;
  std::size_t total = 1;
  for (const ColorClass& c : g.classes) {
    per_class.push_back(class_group(c, cap));
    total *= per_class.back().size();
    if (total > cap) throw CapExceeded("symmetry group exceeds the cap of " + std::to_string(cap));
  }
  std::vector<Symmetry> out;
  out.reserve(total);
  std::vector<std::size_t> idx(per_class.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Symmetry s;
    for (std::size_t i = 0; i < per_class.size(); ++i) s.perm.push_back(per_class[i][idx[i]]);
    out.push_back(std::move(s));
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
      if (++idx[i] < per_class[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

std::string cycle_notation(const SymmetricGame& g, const Symmetry& s) {
  std::string out;
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const auto& p = s.perm[i];
    std::vector<bool> seen(p.size(), false);
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (seen[c] || p[c] == static_cast<int>(c)) continue;
      out += '(';
      for (std::size_t x = c; !seen[x]; x = p[x]) {
        if (x != c) out += ' ';
        out += g.classes[i].colors[x];
        seen[x] = true;
      }
      out += ')';
    }
  }
  return out.empty() ? "()" : out;
}

NodeMap lift(const PTGame& pt, const Symmetry& s) {
  const SymmetricGame& g = *pt.hl;
  NodeMap m;
  m.place.resize(pt.num_places());
  m.trans.resize(pt.num_transitions());
  std::vector<int> buf;
  for (int p = 0; p < pt.num_places(); ++p) {
    const auto& type = g.places[pt.place_hl[p]].type;
    buf = pt.place_colors[p];
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = s.perm[type[k]][buf[k]];
    m.place[p] = pt.place_id(pt.place_hl[p], buf);
  }
  for (int t = 0; t < pt.num_transitions(); ++t) {
    const auto& sig = g.transitions[pt.trans_hl[t]].var_class;
    buf = pt.trans_mode[t];
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = s.perm[sig[k]][buf[k]];
    m.trans[t] = pt.transition_id(pt.trans_hl[t], buf);
  }
  return m;
}

Marking apply(const NodeMap& m, const Marking& marking) {
  Marking out;
  out.reserve(marking.size());
  for (int p : marking) out.push_back(m.place[p]);
  std::sort(out.begin(), out.end());
  return out;
}

void check_initial_symmetric(const PTGame& pt, const std::vector<Symmetry>& group) {
  for (const Symmetry& s : group)
    if (hlpg::apply(lift(pt, s), pt.initial) != pt.initial)
      throw ModelError("initial marking is not symmetric under " + cycle_notation(*pt.hl, s));
}

}  // namespace hlpg
