#include "hlpg/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace hlpg {

namespace {

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

void unite(std::vector<int>& p, int a, int b) {
  a = find(p, a);
  b = find(p, b);
  if (a != b) p[std::max(a, b)] = std::min(a, b);
}

void unite_cuts(std::vector<int>& parent, const Cut& a, const Cut& b) {
  if (a.places.size() != b.places.size()) throw std::logic_error("folding cuts of different size");
  for (std::size_t i = 0; i < a.places.size(); ++i) {
    if (a.places[i].first != b.places[i].first) throw std::logic_error("folding cuts with different labels");
    unite(parent, a.places[i].second, b.places[i].second);
  }
}

// Sorts cuts by decision set and identifies the places of cuts standing for the same set.
void normalize_cuts(std::vector<Cut>& cuts, std::vector<int>& parent) {
  std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.actual < b.actual; });
  std::vector<Cut> out;
  for (Cut& c : cuts) {
    if (!out.empty() && out.back().actual == c.actual) {
      unite_cuts(parent, out.back(), c);
      continue;
    }
    out.push_back(std::move(c));
  }
  cuts = std::move(out);
}

bool same_profile(const TreeNode& a, const TreeNode& b) {
  if (a.arena_node != b.arena_node || a.cuts.size() != b.cuts.size()) return false;
  for (std::size_t i = 0; i < a.cuts.size(); ++i)
    if (a.cuts[i].actual != b.cuts[i].actual) return false;
  return true;
}

class Unroller {
 public:
  Unroller(const GameGraph& g, const Solution& sol, std::size_t cap) : g_(g), sol_(sol), cap_(cap) {}

  StrategyTree run() {
    const DecisionGame& dg = g_.decisions();
    const PTGame& pt = dg.pt();
    DecisionSet d0 = dg.initial();
    auto [v0, gamma] = g_.resolve(d0);
    Cut c0;
    for (int p : pt.initial) c0.places.emplace_back(p, new_place(p));
    tree_.raw.initial.resize(c0.places.size());
    std::transform(c0.places.begin(), c0.places.end(), tree_.raw.initial.begin(), [](auto& x) { return x.second; });
    std::sort(tree_.raw.initial.begin(), tree_.raw.initial.end());
    c0.actual = d0;
    c0.beta = gamma;
    check_cut(v0, c0);
    tree_.nodes.push_back({v0, -1, {std::move(c0)}, {}, -1});

    std::deque<int> queue{0};
    while (!queue.empty()) {
      int id = queue.front();
      queue.pop_front();
      int v = tree_.nodes[id].arena_node;
      const Arena& a = g_.arena();
      if (a.flags[v].closed()) continue;
      // Children keyed by arena node, in first-appearance order.
      std::vector<TreeNode> kids;
      const DecisionSet& anchor = anchor_of(v);
      std::vector<Move> moves;
      if (a.player[v] == 0) {
        int e = sol_.strategy[v];
        if (e < 0) throw std::logic_error("winning player-0 node without a strategy edge");
        moves.push_back(a.edges[e].move);
      } else {
        dg.successors(anchor, a.flags[v], [&](const Move& m, DecisionSet&&) { moves.push_back(m); });
      }
      for (const Move& m : moves) {
        DecisionSet next_anchor = dg.apply_move(anchor, m);
        auto [w, gam] = g_.resolve(next_anchor);
        for (std::size_t ci = 0; ci < tree_.nodes[id].cuts.size(); ++ci) {
          Cut child = advance(tree_.nodes[id].cuts[ci], m, gam);
          check_cut(w, child);
          auto it = std::find_if(kids.begin(), kids.end(), [&](const TreeNode& k) { return k.arena_node == w; });
          if (it == kids.end()) {
            kids.push_back({w, id, {}, {}, -1});
            it = kids.end() - 1;
          }
          it->cuts.push_back(std::move(child));
        }
      }
      for (TreeNode& k : kids) {
        normalize_cuts(k.cuts, tree_.place_parent);
        int kid = static_cast<int>(tree_.nodes.size());
        if (tree_.nodes.size() >= cap_)
          throw CapExceeded("strategy tree exceeds the cap of " + std::to_string(cap_) + " nodes");
        for (int anc = id; anc >= 0; anc = tree_.nodes[anc].parent) {
          if (!same_profile(tree_.nodes[anc], k)) continue;
          for (std::size_t i = 0; i < k.cuts.size(); ++i) unite_cuts(tree_.place_parent, tree_.nodes[anc].cuts[i], k.cuts[i]);
          k.fold_to = anc;
          break;
        }
        bool fold = k.fold_to >= 0;
        tree_.nodes.push_back(std::move(k));
        tree_.nodes[id].children.push_back(kid);
        if (!fold) queue.push_back(kid);
      }
    }
    return std::move(tree_);
  }

 private:
  const GameGraph& g_;
  const Solution& sol_;
  std::size_t cap_;
  StrategyTree tree_;
  std::map<int, DecisionSet> anchors_;
  std::map<std::pair<int, std::vector<int>>, int> trans_index_;  // (label, preset) -> transition

  const DecisionSet& anchor_of(int v) {
    auto it = anchors_.find(v);
    if (it == anchors_.end()) it = anchors_.emplace(v, g_.anchor(v)).first;
    return it->second;
  }

  int new_place(int label) {
    tree_.raw.place_label.push_back(label);
    int id = static_cast<int>(tree_.place_parent.size());
    tree_.place_parent.push_back(id);
    return id;
  }

  void check_cut(int v, const Cut& c) {
    const DecisionGame& dg = g_.decisions();
    Marking m = dg.marking(c.actual);
    if (m.size() != c.places.size() ||
        !std::equal(m.begin(), m.end(), c.places.begin(), [](int p, const auto& x) { return p == x.first; }))
      throw std::logic_error("cut labels differ from the marking of its decision set");
    if (dg.apply(c.actual, lift(dg.pt(), c.beta)) != anchor_of(v))
      throw std::logic_error("cut does not map onto the anchor of its arena node");
  }

  // Applies the anchor move m to a cut; gamma maps the anchor successor onto the next anchor.
  Cut advance(const Cut& c, const Move& m, const Symmetry& gamma) {
    const DecisionGame& dg = g_.decisions();
    const PTGame& pt = dg.pt();
    Move actual = dg.apply(m, lift(pt, inverse(c.beta)));
    Cut out;
    out.actual = dg.apply_move(c.actual, actual);
    out.beta = compose(gamma, c.beta);
    if (actual.trans < 0) {
      out.places = c.places;
      return out;
    }
    int t = actual.trans;
    std::vector<int> preset;
    for (int p : pt.pre[t]) {
      auto it = std::lower_bound(c.places.begin(), c.places.end(), std::make_pair(p, -1));
      if (it == c.places.end() || it->first != p) throw std::logic_error("cut lacks the preset of a move");
      preset.push_back(it->second);
    }
    std::sort(preset.begin(), preset.end());
    auto key = std::make_pair(t, preset);
    auto it = trans_index_.find(key);
    int tid;
    if (it == trans_index_.end()) {
      tid = tree_.raw.num_transitions();
      trans_index_.emplace(key, tid);
      tree_.raw.trans_label.push_back(t);
      tree_.raw.pre.push_back(preset);
      std::vector<int> post;
      for (int p : pt.post[t]) post.push_back(new_place(p));
      tree_.raw.post.push_back(post);
    } else {
      tid = it->second;
    }
    for (const auto& x : c.places)
      if (!std::binary_search(pt.pre[t].begin(), pt.pre[t].end(), x.first)) out.places.push_back(x);
    const auto& post = tree_.raw.post[tid];
    for (std::size_t k = 0; k < post.size(); ++k) out.places.emplace_back(pt.post[t][k], post[k]);
    std::sort(out.places.begin(), out.places.end());
    return out;
  }
};

}  // namespace

StrategyTree unroll(const GameGraph& g, const Solution& sol, std::size_t node_cap) {
  if (!sol.realizable) throw std::invalid_argument("unroll needs a realizable solution");
  return Unroller(g, sol, node_cap).run();
}

StrategyNet translate(StrategyTree tree) {
  StrategyNet& raw = tree.raw;
  auto& parent = tree.place_parent;
  // Identify equally labeled transitions with identical presets, then their postsets, to a fixpoint.
  bool changed = true;
  std::vector<bool> dead(raw.num_transitions(), false);
  while (changed) {
    changed = false;
    std::map<std::pair<int, std::vector<int>>, int> seen;
    for (int t = 0; t < raw.num_transitions(); ++t) {
      if (dead[t]) continue;
      std::vector<int> pre;
      for (int p : raw.pre[t]) pre.push_back(find(parent, p));
      std::sort(pre.begin(), pre.end());
      auto [it, fresh] = seen.emplace(std::make_pair(raw.trans_label[t], pre), t);
      if (fresh) continue;
      int u = it->second;
      for (std::size_t k = 0; k < raw.post[t].size(); ++k)
        if (find(parent, raw.post[t][k]) != find(parent, raw.post[u][k])) {
          unite(parent, raw.post[t][k], raw.post[u][k]);
          changed = true;
        }
      dead[t] = true;
    }
  }
  StrategyNet out;
  std::vector<int> id(raw.num_places(), -1);
  auto place_of = [&](int p) {
    int r = find(parent, p);
    if (id[r] < 0) {
      id[r] = out.num_places();
      out.place_label.push_back(raw.place_label[r]);
    }
    return id[r];
  };
  for (int p : raw.initial) out.initial.push_back(place_of(p));
  for (int t = 0; t < raw.num_transitions(); ++t) {
    if (dead[t]) continue;
    std::vector<int> pre, post;
    for (int p : raw.pre[t]) pre.push_back(place_of(p));
    for (int p : raw.post[t]) post.push_back(place_of(p));
    std::sort(pre.begin(), pre.end());
    std::sort(post.begin(), post.end());
    out.trans_label.push_back(raw.trans_label[t]);
    out.pre.push_back(std::move(pre));
    out.post.push_back(std::move(post));
  }
  std::sort(out.initial.begin(), out.initial.end());
  return out;
}

// ---------------------------------------------------------------- validation

namespace {

std::string render_marking(const StrategyNet& s, const PTGame& pt, const std::vector<int>& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i)
    out += (i ? ", " : "") + pt.place_name[s.place_label[m[i]]] + "#" + std::to_string(m[i]);
  return out + "}";
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = v.size();
    for (int x : v) h = h * 0x100000001b3ull ^ static_cast<std::uint64_t>(x);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

ValidationReport validate_strategy(const StrategyNet& s, const PTGame& pt, std::size_t cap) {
  ValidationReport rep;
  std::vector<std::vector<int>> consumers(s.num_places());
  for (int t = 0; t < s.num_transitions(); ++t)
    for (int p : s.pre[t]) consumers[p].push_back(t);
  auto violate = [&](bool& flag, const std::string& what, const std::vector<int>& m) {
    flag = false;
    if (rep.violations.size() < 20) rep.violations.push_back(what + " at " + render_marking(s, pt, m));
  };

  std::unordered_set<std::vector<int>, VecHash> seen{s.initial};
  std::deque<std::vector<int>> queue{s.initial};
  while (!queue.empty()) {
    std::vector<int> m = std::move(queue.front());
    queue.pop_front();
    ++rep.markings;
    auto marked = [&](int p) { return std::binary_search(m.begin(), m.end(), p); };
    Marking labels;
    for (int p : m) {
      labels.push_back(s.place_label[p]);
      if (pt.place_bad[s.place_label[p]]) violate(rep.winning, "bad place " + pt.place_name[s.place_label[p]], m);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      violate(rep.safe, "two places with the same label", m);
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::vector<int> en;
    for (int p : m)
      for (int t : consumers[p])
        if (std::all_of(s.pre[t].begin(), s.pre[t].end(), marked)) en.push_back(t);
    std::sort(en.begin(), en.end());
    en.erase(std::unique(en.begin(), en.end()), en.end());

    for (int p : m) {
      if (!pt.place_system[s.place_label[p]]) continue;
      int n = 0;
      for (int t : consumers[p]) n += std::binary_search(en.begin(), en.end(), t);
      if (n > 1) violate(rep.deterministic, "system place " + pt.place_name[s.place_label[p]] + " has " +
                                                std::to_string(n) + " enabled transitions",
                         m);
    }

    std::vector<int> game_en;
    for (int p : labels)
      for (int u : pt.postset[p])
        if (pt_enabled(pt, labels, u)) game_en.push_back(u);
    std::sort(game_en.begin(), game_en.end());
    game_en.erase(std::unique(game_en.begin(), game_en.end()), game_en.end());
    if (!game_en.empty() && en.empty()) violate(rep.deadlock_free, "deadlock", m);

    for (int u : game_en) {
      bool present = std::any_of(en.begin(), en.end(), [&](int t) { return s.trans_label[t] == u; });
      if (present) continue;
      bool refused = false;
      for (int p : m) {
        int l = s.place_label[p];
        if (!pt.place_system[l] || !std::binary_search(pt.pre[u].begin(), pt.pre[u].end(), l)) continue;
        if (std::none_of(consumers[p].begin(), consumers[p].end(), [&](int t) { return s.trans_label[t] == u; }))
          refused = true;
      }
      if (!refused) violate(rep.justified_refusal, "unjustified refusal of " + pt.trans_name[u], m);
    }

    for (int t : en) {
      std::vector<int> next;
      std::set_difference(m.begin(), m.end(), s.pre[t].begin(), s.pre[t].end(), std::back_inserter(next));
      bool unsafe = false;
      for (int p : s.post[t]) {
        if (std::binary_search(next.begin(), next.end(), p)) unsafe = true;
        next.insert(std::lower_bound(next.begin(), next.end(), p), p);
      }
      if (unsafe) violate(rep.safe, "firing " + pt.trans_name[s.trans_label[t]] + " marks a place twice", m);
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw CapExceeded("strategy markings exceed the cap of " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  return rep;
}

bool causally_precedes(const StrategyNet& s, const PTGame& pt, const std::string& from, const std::string& to) {
  const SymmetricGame& g = *pt.hl;
  int a = g.transition_index(from), b = g.transition_index(to);
  if (a < 0 || b < 0) return false;
  std::vector<std::vector<int>> consumers(s.num_places());
  for (int t = 0; t < s.num_transitions(); ++t)
    for (int p : s.pre[t]) consumers[p].push_back(t);
  std::vector<bool> seen(s.num_transitions(), false);
  std::deque<int> queue;
  for (int t = 0; t < s.num_transitions(); ++t)
    if (pt.trans_hl[s.trans_label[t]] == a) {
      seen[t] = true;
      queue.push_back(t);
    }
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int p : s.post[t])
      for (int u : consumers[p]) {
        if (pt.trans_hl[s.trans_label[u]] == b) return true;
        if (!seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
  }
  return false;
}

std::string strategy_text(const StrategyNet& s, const PTGame& pt) {
  std::string out = "places " + std::to_string(s.num_places()) + "\n";
  for (int p = 0; p < s.num_places(); ++p) {
    int l = s.place_label[p];
    out += "  p" + std::to_string(p) + " " + pt.place_name[l] + (pt.place_system[l] ? " sys" : " env");
    if (pt.place_bad[l]) out += " bad";
    if (std::binary_search(s.initial.begin(), s.initial.end(), p)) out += " init";
    out += "\n";
  }
  out += "transitions " + std::to_string(s.num_transitions()) + "\n";
  auto list = [](const std::vector<int>& v) {
    std::string r;
    for (int p : v) r += " p" + std::to_string(p);
    return r;
  };
  for (int t = 0; t < s.num_transitions(); ++t)
    out += "  t" + std::to_string(t) + " " + pt.trans_name[s.trans_label[t]] + " :" + list(s.pre[t]) + " ->" +
           list(s.post[t]) + "\n";
  return out;
}

std::string strategy_dot(const StrategyNet& s, const PTGame& pt) {
  std::string out = "digraph strategy {\n  rankdir=TB;\n  node [fontname=\"monospace\"];\n";
  for (int p = 0; p < s.num_places(); ++p) {
    int l = s.place_label[p];
    out += "  p" + std::to_string(p) + " [shape=circle, label=\"" + pt.place_name[l] + "\"";
    if (pt.place_system[l]) out += ", style=filled, fillcolor=gray85";
    if (pt.place_bad[l]) out += ", peripheries=2";
    if (std::binary_search(s.initial.begin(), s.initial.end(), p)) out += ", penwidth=2";
    out += "];\n";
  }
  for (int t = 0; t < s.num_transitions(); ++t) {
    out += "  t" + std::to_string(t) + " [shape=box, label=\"" + pt.trans_name[s.trans_label[t]] + "\"];\n";
    for (int p : s.pre[t]) out += "  p" + std::to_string(p) + " -> t" + std::to_string(t) + ";\n";
    for (int p : s.post[t]) out += "  t" + std::to_string(t) + " -> p" + std::to_string(p) + ";\n";
  }
  return out + "}\n";
}

}  // namespace hlpg
