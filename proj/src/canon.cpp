#include "hlpg/canon.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

namespace hlpg {

namespace {

void put16(std::string& s, long v) {
  if (v < 0 || v > 0xffff) throw std::length_error("serialization field out of range");
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>(v & 0xff));
}

void put32(std::string& s, long v) {
  for (int sh = 24; sh >= 0; sh -= 8) s.push_back(static_cast<char>((v >> sh) & 0xff));
}

// Odometer over the cartesian product; the first position varies slowest.
template <class F>
void product(const std::vector<std::vector<int>>& choices, F&& f) {
  for (const auto& c : choices)
    if (c.empty()) return;
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<int> cur(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i) cur[i] = choices[i][idx[i]];
    f(cur);
    int i = static_cast<int>(choices.size()) - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
    if (i < 0) return;
  }
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(iota_vec(n)) {}
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

auto entry_key_less = [](const RepEntry& e, const std::pair<int, const std::vector<int>*>& k) {
  if (e.place != k.first) return e.place < k.first;
  return e.tuple < *k.second;
};

const RepEntry* find_rep_entry(const Rep& r, int place, const std::vector<int>& tuple) {
  auto it = std::lower_bound(r.entries.begin(), r.entries.end(), std::make_pair(place, &tuple), entry_key_less);
  return (it != r.entries.end() && it->place == place && it->tuple == tuple) ? &*it : nullptr;
}

void sort_entries(Rep& r) {
  for (auto& e : r.entries) {
    std::sort(e.k.begin(), e.k.end());
    e.k.erase(std::unique(e.k.begin(), e.k.end()), e.k.end());
  }
  std::sort(r.entries.begin(), r.entries.end());
}

long long falling(long long n, long long k) {
  long long r = 1;
  for (long long i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace

Canon::Canon(const DecisionGame& dg) : dg_(&dg) {
  const SymmetricGame& g = hl();
  auto ranks = [](auto names) {
    std::vector<int> order = iota_vec(static_cast<int>(names.size()));
    std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
    std::vector<int> rank(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    return rank;
  };
  std::vector<std::string> pn, tn;
  for (const auto& p : g.places) pn.push_back(p.name);
  for (const auto& t : g.transitions) tn.push_back(t.name);
  place_rank_ = ranks(pn);
  trans_rank_ = ranks(tn);
}

// ---------------------------------------------------------------- representations

Inst Canon::inst_of(int tau, const Assignment& a) const {
  const PTGame& p = pt();
  Inst in{p.trans_hl[tau], p.trans_mode[tau]};
  const auto& sig = hl().transitions[in.trans].var_class;
  for (std::size_t v = 0; v < in.args.size(); ++v) in.args[v] = a.sub[sig[v]][in.args[v]];
  return in;
}

Rep Canon::image(const DecisionSet& d, const Assignment& a, const std::vector<std::vector<Subclass>>& subs) const {
  const PTGame& p = pt();
  Rep r;
  r.subs = subs;
  for (const Entry& e : d.entries) {
    RepEntry re;
    re.place = p.place_hl[e.place];
    re.tuple = p.place_colors[e.place];
    const auto& type = hl().places[re.place].type;
    for (std::size_t k = 0; k < re.tuple.size(); ++k) re.tuple[k] = a.sub[type[k]][re.tuple[k]];
    if (e.k == kTop) {
      re.kind = RepEntry::Top;
    } else {
      const auto& post = p.postset[e.place];
      for (std::uint64_t rest = e.k; rest; rest &= rest - 1) re.k.push_back(inst_of(post[std::countr_zero(rest)], a));
    }
    r.entries.push_back(std::move(re));
  }
  sort_entries(r);
  r.entries.erase(std::unique(r.entries.begin(), r.entries.end(),
                              [](const RepEntry& x, const RepEntry& y) {
                                return x.place == y.place && x.tuple == y.tuple;
                              }),
                  r.entries.end());
  return r;
}

Canon::Fibers Canon::fibers0(const Rep& r) const {
  const SymmetricGame& g = hl();
  Fibers f(g.classes.size());
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const ColorClass& c = g.classes[i];
    f[i].resize(r.subs[i].size());
    if (c.ordered) {
      int pos = 0;
      for (std::size_t j = 0; j < r.subs[i].size(); ++j)
        for (int k = 0; k < r.subs[i][j].card; ++k) f[i][j].push_back(pos++);
      if (pos != c.size()) throw std::logic_error("subclass cardinalities do not cover class " + c.name);
      continue;
    }
    std::vector<std::size_t> next(c.statics.size(), 0);
    for (std::size_t j = 0; j < r.subs[i].size(); ++j) {
      const Subclass& s = r.subs[i][j];
      const auto& colors = c.statics.at(s.q);
      for (int k = 0; k < s.card; ++k) {
        if (next[s.q] >= colors.size()) throw std::logic_error("subclass cardinalities exceed a static subclass");
        f[i][j].push_back(colors[next[s.q]++]);
      }
    }
    for (std::size_t q = 0; q < c.statics.size(); ++q)
      if (next[q] != c.statics[q].size()) throw std::logic_error("subclass cardinalities do not cover class " + c.name);
  }
  return f;
}

Assignment Canon::canonical_assignment(const Rep& r) const {
  Fibers f = fibers0(r);
  Assignment a;
  for (std::size_t i = 0; i < f.size(); ++i) {
    a.sub.emplace_back(hl().classes[i].size(), -1);
    for (std::size_t j = 0; j < f[i].size(); ++j)
      for (int c : f[i][j]) a.sub[i][c] = static_cast<int>(j);
  }
  return a;
}

DecisionSet Canon::instantiate(const Rep& r, const Assignment& a) const {
  const PTGame& p = pt();
  const SymmetricGame& g = hl();
  Fibers fib(g.classes.size());
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    fib[i].resize(r.subs[i].size());
    for (int c = 0; c < g.classes[i].size(); ++c) fib[i][a.sub[i][c]].push_back(c);
  }
  DecisionSet d;
  for (const RepEntry& re : r.entries) {
    if (re.kind == RepEntry::Pending) throw std::logic_error("instantiating a pending commitment");
    const auto& type = g.places[re.place].type;
    std::vector<std::vector<int>> choices;
    for (std::size_t k = 0; k < type.size(); ++k) choices.push_back(fib[type[k]][re.tuple[k]]);
    product(choices, [&](const std::vector<int>& colors) {
      int pl = p.place_id(re.place, colors);
      if (pl < 0) throw std::logic_error("instantiation names no place");
      std::uint64_t k = 0;
      if (re.kind == RepEntry::Top) {
        k = kTop;
      } else {
        const auto& post = p.postset[pl];
        for (std::size_t i = 0; i < post.size(); ++i)
          if (std::binary_search(re.k.begin(), re.k.end(), inst_of(post[i], a))) k |= std::uint64_t{1} << i;
      }
      d.entries.push_back({pl, k});
    });
  }
  std::sort(d.entries.begin(), d.entries.end());
  return d;
}

bool Canon::represents(const DecisionSet& d, const Assignment& a,
                       const std::vector<std::vector<Subclass>>& subs) const {
  return instantiate(image(d, a, subs), a) == d;
}

std::pair<Rep, Assignment> Canon::represent(const DecisionSet& d) const {
  const SymmetricGame& g = hl();
  Assignment a;
  std::vector<std::vector<Subclass>> subs;
  for (const ColorClass& c : g.classes) {
    a.sub.push_back(iota_vec(c.size()));
    subs.emplace_back();
    for (int x = 0; x < c.size(); ++x) subs.back().push_back({c.static_of[x], 1});
  }
  return {image(d, a, subs), a};
}

// Blocks of colors of one class that may share a dynamic subclass, in subclass order;
// each block lists its colors in rank order.
std::vector<std::vector<int>> Canon::merge_blocks(const DecisionSet& d, int cls) const {
  const SymmetricGame& g = hl();
  const ColorClass& c = g.classes[cls];
  int n = c.size();
  std::vector<std::vector<Subclass>> base_subs;
  Assignment base;
  for (const ColorClass& cc : g.classes) {
    base.sub.push_back(iota_vec(cc.size()));
    base_subs.emplace_back();
    for (int x = 0; x < cc.size(); ++x) base_subs.back().push_back({cc.static_of[x], 1});
  }
  auto pair_ok = [&](int x, int y) {
    Assignment a = base;
    std::vector<std::vector<Subclass>> subs = base_subs;
    auto& s = a.sub[cls];
    for (int z = 0; z < n; ++z) s[z] = z - (z > y ? 1 : 0);
    s[y] = s[x];
    subs[cls].erase(subs[cls].begin() + y);
    subs[cls][s[x]].card = 2;
    return represents(d, a, subs);
  };

  std::vector<std::vector<int>> blocks;
  if (!c.ordered) {
    UnionFind uf(n);
    for (const auto& st : c.statics)
      for (std::size_t i = 0; i < st.size(); ++i)
        for (std::size_t j = i + 1; j < st.size(); ++j)
          if (uf.find(st[i]) != uf.find(st[j]) && pair_ok(st[i], st[j])) uf.unite(st[i], st[j]);
    std::vector<int> root_block(n, -1);
    for (const auto& st : c.statics)
      for (int x : st) {
        int r = uf.find(x);
        if (root_block[r] < 0) {
          root_block[r] = static_cast<int>(blocks.size());
          blocks.emplace_back();
        }
        blocks[root_block[r]].push_back(x);
      }
    return blocks;
  }
  if (c.statics.size() > 1 || n == 1) {
    for (int x = 0; x < n; ++x) blocks.push_back({x});
    return blocks;
  }
  // Single-static ordered class: only neighbours merge; runs are listed from the run holding color 0.
  std::vector<bool> edge(n);
  if (n == 2) {
    edge[0] = edge[1] = pair_ok(0, 1);
  } else {
    for (int x = 0; x < n; ++x) edge[x] = pair_ok(std::min(x, c.succ(x)), std::max(x, c.succ(x)));
  }
  if (std::all_of(edge.begin(), edge.end(), [](bool b) { return b; })) return {iota_vec(n)};
  int start = 0;
  while (edge[(start + n - 1) % n]) start = (start + n - 1) % n;
  for (int done = 0; done < n;) {
    blocks.emplace_back();
    for (int x = (start + done) % n;; x = c.succ(x)) {
      blocks.back().push_back(x);
      if (++done == n || !edge[x]) break;
    }
  }
  return blocks;
}

Canonical Canon::canonicalize(const DecisionSet& d) const {
  const SymmetricGame& g = hl();
  Assignment a;
  std::vector<std::vector<Subclass>> subs(g.classes.size());
  std::vector<std::vector<int>> rank(g.classes.size());
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const ColorClass& c = g.classes[i];
    a.sub.emplace_back(c.size(), -1);
    rank[i].assign(c.size(), 0);
    auto blocks = merge_blocks(d, static_cast<int>(i));
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      subs[i].push_back({c.static_of[blocks[j][0]], static_cast<int>(blocks[j].size())});
      for (std::size_t k = 0; k < blocks[j].size(); ++k) {
        a.sub[i][blocks[j][k]] = static_cast<int>(j);
        rank[i][blocks[j][k]] = static_cast<int>(k);
      }
    }
  }
  Rep r = image(d, a, subs);
  if (instantiate(r, a) != d) throw std::logic_error("merged subclasses do not represent the decision set");
  auto [best, perm] = order_with_perm(r);
  Fibers f = fibers0(best);
  Canonical out;
  out.gamma = identity_symmetry(g);
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    for (int c = 0; c < g.classes[i].size(); ++c) out.gamma.perm[i][c] = f[i][perm[i][a.sub[i][c]]][rank[i][c]];
  out.key = serialize(best);
  out.rep = std::move(best);
  return out;
}

Canonical Canon::canonicalize_rep(const Rep& r) const { return canonicalize(instantiate(r)); }

Rep Canon::minimize(const Rep& r) const {
  DecisionSet d = instantiate(r);
  const SymmetricGame& g = hl();
  Assignment a;
  std::vector<std::vector<Subclass>> subs(g.classes.size());
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    a.sub.emplace_back(g.classes[i].size(), -1);
    auto blocks = merge_blocks(d, static_cast<int>(i));
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      subs[i].push_back({g.classes[i].static_of[blocks[j][0]], static_cast<int>(blocks[j].size())});
      for (int c : blocks[j]) a.sub[i][c] = static_cast<int>(j);
    }
  }
  return image(d, a, subs);
}

std::vector<RepEntry> Canon::context(const Rep& r, int cls, int sub) const {
  const SymmetricGame& g = hl();
  std::vector<RepEntry> out;
  for (const RepEntry& e : r.entries) {
    const auto& type = g.places[e.place].type;
    for (std::size_t k = 0; k < e.tuple.size(); ++k)
      if (type[k] == cls && e.tuple[k] == sub) {
        RepEntry x = e;
        x.tuple[k] = -1;
        out.push_back(std::move(x));
      }
    for (std::size_t m = 0; m < e.k.size(); ++m) {
      const auto& sig = g.transitions[e.k[m].trans].var_class;
      for (std::size_t v = 0; v < sig.size(); ++v)
        if (sig[v] == cls && e.k[m].args[v] == sub) {
          RepEntry x = e;
          x.k[m].args[v] = -1;
          std::sort(x.k.begin(), x.k.end());
          out.push_back(std::move(x));
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- serialization and order

std::string Canon::serialize(const Rep& r) const {
  const SymmetricGame& g = hl();
  auto inst_bytes = [&](const Inst& in, int cls, int sub, int punct) {
    std::string s;
    put16(s, trans_rank_[in.trans]);
    const auto& sig = g.transitions[in.trans].var_class;
    int occ = 0;
    for (std::size_t v = 0; v < in.args.size(); ++v) {
      bool hit = sig[v] == cls && in.args[v] == sub;
      put16(s, hit && occ++ == punct ? 0 : in.args[v] + 1);
    }
    return s;
  };
  auto count_in = [&](const Inst& in, int cls, int sub) {
    const auto& sig = g.transitions[in.trans].var_class;
    int n = 0;
    for (std::size_t v = 0; v < in.args.size(); ++v) n += sig[v] == cls && in.args[v] == sub;
    return n;
  };
  // Encodes e with its punct-th occurrence of (cls, sub) replaced by ◇ (punct < 0: none).
  auto encode = [&](const RepEntry& e, int cls, int sub, int punct) {
    std::string s;
    s.push_back(e.kind == RepEntry::Top ? 0 : e.k.empty() ? 1 : 2);
    put16(s, place_rank_[e.place]);
    const auto& type = g.places[e.place].type;
    int occ = 0;
    for (std::size_t k = 0; k < e.tuple.size(); ++k) {
      bool hit = type[k] == cls && e.tuple[k] == sub;
      put16(s, hit && occ++ == punct ? 0 : e.tuple[k] + 1);
    }
    if (e.kind != RepEntry::Top) {
      put16(s, static_cast<long>(e.k.size()));
      std::vector<std::string> insts;
      for (const Inst& in : e.k) {
        int n = count_in(in, cls, sub);
        insts.push_back(inst_bytes(in, cls, sub, punct - occ));
        occ += n;
      }
      std::sort(insts.begin(), insts.end());
      for (auto& x : insts) s += x;
    }
    return s;
  };
  auto occurrences = [&](const RepEntry& e, int cls, int sub) {
    const auto& type = g.places[e.place].type;
    int n = 0;
    for (std::size_t k = 0; k < e.tuple.size(); ++k) n += type[k] == cls && e.tuple[k] == sub;
    for (const Inst& in : e.k) n += count_in(in, cls, sub);
    return n;
  };
  auto emit_row = [](std::string& out, std::vector<std::string>& items) {
    std::sort(items.begin(), items.end());
    for (auto& x : items) {
      out.push_back(1);
      out += x;
    }
    out.push_back(0);
  };

  std::string out;
  for (std::size_t i = 0; i < r.subs.size(); ++i) {
    put16(out, static_cast<long>(r.subs[i].size()));
    for (const Subclass& s : r.subs[i]) put16(out, s.q);
  }
  std::vector<std::string> items;
  for (std::size_t i = 0; i < r.subs.size(); ++i)
    for (std::size_t j = 0; j < r.subs[i].size(); ++j) {
      items.clear();
      for (const RepEntry& e : r.entries) {
        int n = occurrences(e, static_cast<int>(i), static_cast<int>(j));
        for (int o = 0; o < n; ++o) items.push_back(encode(e, static_cast<int>(i), static_cast<int>(j), o));
      }
      emit_row(out, items);
    }
  items.clear();
  for (const RepEntry& e : r.entries) {
    bool ground = e.tuple.empty() && std::all_of(e.k.begin(), e.k.end(), [](const Inst& in) { return in.args.empty(); });
    if (ground) items.push_back(encode(e, -1, -1, -1));
  }
  emit_row(out, items);
  for (const auto& cls : r.subs)
    for (const Subclass& s : cls) put32(out, s.card);
  return out;
}

Rep Canon::relabel(const Rep& r, const std::vector<std::vector<int>>& perm) const {
  const SymmetricGame& g = hl();
  Rep out;
  out.subs = r.subs;
  for (std::size_t i = 0; i < r.subs.size(); ++i)
    for (std::size_t j = 0; j < r.subs[i].size(); ++j) out.subs[i][perm[i][j]] = r.subs[i][j];
  out.entries = r.entries;
  for (RepEntry& e : out.entries) {
    const auto& type = g.places[e.place].type;
    for (std::size_t k = 0; k < e.tuple.size(); ++k) e.tuple[k] = perm[type[k]][e.tuple[k]];
    for (Inst& in : e.k) {
      const auto& sig = g.transitions[in.trans].var_class;
      for (std::size_t v = 0; v < in.args.size(); ++v) in.args[v] = perm[sig[v]][in.args[v]];
    }
  }
  sort_entries(out);
  return out;
}

std::string Canon::serialize_with(const Rep& r, const std::vector<std::vector<int>>& perm) const {
  return serialize(relabel(r, perm));
}

std::pair<Rep, std::vector<std::vector<int>>> Canon::order_with_perm(const Rep& r) const {
  const SymmetricGame& g = hl();
  std::vector<std::vector<std::vector<int>>> per_class;
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const ColorClass& c = g.classes[i];
    int m = static_cast<int>(r.subs[i].size());
    std::vector<std::vector<int>> perms;
    if (c.ordered) {
      if (c.statics.size() > 1) {
        perms.push_back(iota_vec(m));
      } else {
        for (int rho = 0; rho < m; ++rho) {
          std::vector<int> p(m);
          for (int j = 0; j < m; ++j) p[j] = (j - rho + m) % m;
          perms.push_back(std::move(p));
        }
      }
    } else {
      perms.push_back(iota_vec(m));
      for (int lo = 0; lo < m;) {
        int hi = lo;
        while (hi < m && r.subs[i][hi].q == r.subs[i][lo].q) ++hi;
        std::vector<int> members = iota_vec(hi - lo);
        for (int& x : members) x += lo;
        std::vector<std::vector<int>> next;
        std::vector<int> seq = members;
        do {
          for (const auto& base : perms) {
            std::vector<int> p = base;
            for (std::size_t t = 0; t < seq.size(); ++t) p[seq[t]] = members[t];
            next.push_back(std::move(p));
          }
        } while (std::next_permutation(seq.begin(), seq.end()));
        perms = std::move(next);
        lo = hi;
      }
    }
    per_class.push_back(std::move(perms));
  }
  std::vector<std::vector<int>> best_perm;
  Rep best;
  std::string best_key;
  std::vector<std::vector<int>> choice;
  for (const auto& pc : per_class) choice.push_back(iota_vec(static_cast<int>(pc.size())));
  product(choice, [&](const std::vector<int>& idx) {
    std::vector<std::vector<int>> perm;
    for (std::size_t i = 0; i < idx.size(); ++i) perm.push_back(per_class[i][idx[i]]);
    Rep cand = relabel(r, perm);
    std::string key = serialize(cand);
    if (best_perm.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(cand);
      best_perm = std::move(perm);
    }
  });
  return {std::move(best), std::move(best_perm)};
}

Rep Canon::order(const Rep& r) const { return order_with_perm(r).first; }

bool Canon::valid_assignment(const Rep& r, const Assignment& a) const {
  const SymmetricGame& g = hl();
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const ColorClass& c = g.classes[i];
    int m = static_cast<int>(r.subs[i].size());
    std::vector<int> count(m, 0);
    for (int x = 0; x < c.size(); ++x) {
      int j = a.sub[i][x];
      if (j < 0 || j >= m || r.subs[i][j].q != c.static_of[x]) return false;
      ++count[j];
      if (c.ordered) {
        int nj = a.sub[i][c.succ(x)];
        if (nj != j && nj != (j + 1) % m) return false;
      }
    }
    for (int j = 0; j < m; ++j)
      if (count[j] != r.subs[i][j].card) return false;
  }
  return true;
}

std::vector<Assignment> Canon::valid_assignments(const Rep& r) const {
  const SymmetricGame& g = hl();
  Assignment a0 = canonical_assignment(r);
  std::vector<std::vector<std::vector<int>>> per_class;
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    const ColorClass& c = g.classes[i];
    std::vector<std::vector<int>> opts;
    if (c.ordered) {
      for (int rho = 0; rho < c.size(); ++rho) {
        std::vector<int> s(c.size());
        for (int x = 0; x < c.size(); ++x) s[c.succ(x, rho)] = a0.sub[i][x];
        opts.push_back(std::move(s));
      }
    } else {
      // Every map with the right fiber sizes: permutations of the canonical labelling within statics.
      std::vector<int> s = a0.sub[i];
      opts.push_back(s);
      for (const auto& st : c.statics) {
        std::vector<std::vector<int>> next;
        for (const auto& base : opts) {
          std::vector<int> labels;
          for (int x : st) labels.push_back(base[x]);
          std::sort(labels.begin(), labels.end());
          do {
            std::vector<int> p = base;
            for (std::size_t k = 0; k < st.size(); ++k) p[st[k]] = labels[k];
            next.push_back(std::move(p));
          } while (std::next_permutation(labels.begin(), labels.end()));
        }
        opts = std::move(next);
      }
    }
    std::sort(opts.begin(), opts.end());
    opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    per_class.push_back(std::move(opts));
  }
  std::vector<Assignment> out;
  std::vector<std::vector<int>> choice;
  for (const auto& pc : per_class) choice.push_back(iota_vec(static_cast<int>(pc.size())));
  product(choice, [&](const std::vector<int>& idx) {
    Assignment a;
    for (std::size_t i = 0; i < idx.size(); ++i) a.sub.push_back(per_class[i][idx[i]]);
    if (valid_assignment(r, a)) out.push_back(std::move(a));
  });
  return out;
}

// ---------------------------------------------------------------- symbolic semantics

bool Canon::guard_satisfiable(const Rep& r, const Inst& inst) const {
  const Transition& tr = hl().transitions[inst.trans];
  int n = static_cast<int>(inst.args.size());
  UnionFind uf(n);
  for (const Literal& l : tr.guard) {
    if (l.kind == Literal::In) {
      if (r.subs[tr.var_class[l.a]][inst.args[l.a]].q != l.b) return false;
    } else if (l.kind == Literal::Eq) {
      if (inst.args[l.a] != inst.args[l.b]) return false;
      uf.unite(l.a, l.b);
    }
  }
  std::vector<std::pair<int, int>> neq;
  for (const Literal& l : tr.guard) {
    if (l.kind != Literal::Neq || inst.args[l.a] != inst.args[l.b]) continue;
    int a = uf.find(l.a), b = uf.find(l.b);
    if (a == b) return false;
    neq.emplace_back(a, b);
  }
  if (neq.empty()) return true;
  // Distinct-color constraints inside one subclass: color the roots with at most card colors.
  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (uf.find(v) == v) roots.push_back(v);
  std::vector<int> color(n, -1);
  auto card = [&](int v) { return r.subs[tr.var_class[v]][inst.args[v]].card; };
  auto solve = [&](auto&& self, std::size_t i) -> bool {
    if (i == roots.size()) return true;
    int v = roots[i];
    for (int c = 0; c < card(v); ++c) {
      bool ok = true;
      for (auto [a, b] : neq) {
        int other = a == v ? b : b == v ? a : -1;
        if (other >= 0 && color[other] == c && inst.args[other] == inst.args[v] &&
            tr.var_class[other] == tr.var_class[v])
          ok = false;
      }
      if (!ok) continue;
      color[v] = c;
      if (self(self, i + 1)) return true;
      color[v] = -1;
    }
    return false;
  };
  return solve(solve, 0);
}

bool Canon::arc_matches(const Rep& r, const Arc& arc, const std::vector<int>& args,
                        const std::vector<int>& tuple) const {
  const auto& type = hl().places[arc.place].type;
  for (const TermTuple& tt : arc.tuples) {
    bool ok = true;
    for (std::size_t k = 0; k < tt.size() && ok; ++k) {
      if (tt[k].kind == Term::All) continue;
      int m = static_cast<int>(r.subs[type[k]].size());
      ok = (args[tt[k].var] + tt[k].depth) % m == tuple[k];
    }
    if (ok) return true;
  }
  return false;
}

std::vector<std::vector<int>> Canon::arc_tuples(const Rep& r, const Arc& arc, const std::vector<int>& args) const {
  const auto& type = hl().places[arc.place].type;
  std::vector<std::vector<int>> out;
  for (const TermTuple& tt : arc.tuples) {
    std::vector<std::vector<int>> choices;
    for (std::size_t k = 0; k < tt.size(); ++k) {
      int m = static_cast<int>(r.subs[type[k]].size());
      if (tt[k].kind == Term::All)
        choices.push_back(iota_vec(m));
      else
        choices.push_back({(args[tt[k].var] + tt[k].depth) % m});
    }
    product(choices, [&](const std::vector<int>& t) { out.push_back(t); });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Inst> Canon::post_instances(const Rep& r, int place, const std::vector<int>& tuple) const {
  const SymmetricGame& g = hl();
  const auto& type = g.places[place].type;
  std::vector<Inst> out;
  for (int ai : g.place_out_arcs[place]) {
    const Arc& arc = g.arcs[ai];
    const auto& sig = g.transitions[arc.trans].var_class;
    for (const TermTuple& tt : arc.tuples) {
      std::vector<int> fixed(sig.size(), -1);
      bool ok = true;
      for (std::size_t k = 0; k < tt.size() && ok; ++k) {
        if (tt[k].kind == Term::All) continue;
        int m = static_cast<int>(r.subs[type[k]].size());
        int want = ((tuple[k] - tt[k].depth) % m + m) % m;
        int& f = fixed[tt[k].var];
        if (f >= 0 && f != want) ok = false;
        f = want;
      }
      if (!ok) continue;
      std::vector<std::vector<int>> choices;
      for (std::size_t v = 0; v < sig.size(); ++v)
        choices.push_back(fixed[v] >= 0 ? std::vector<int>{fixed[v]}
                                        : iota_vec(static_cast<int>(r.subs[sig[v]].size())));
      product(choices, [&](const std::vector<int>& args) {
        Inst in{arc.trans, args};
        if (guard_satisfiable(r, in)) out.push_back(std::move(in));
      });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Canon::instance_enabled(const Rep& r, const Inst& inst, bool need_commitment) const {
  const SymmetricGame& g = hl();
  for (int ai : g.in_arcs[inst.trans]) {
    const Arc& arc = g.arcs[ai];
    for (const auto& tuple : arc_tuples(r, arc, inst.args)) {
      const RepEntry* e = find_rep_entry(r, arc.place, tuple);
      if (!e) return false;
      if (need_commitment && (e->kind != RepEntry::Set || !std::binary_search(e->k.begin(), e->k.end(), inst)))
        return false;
    }
  }
  return true;
}

void Canon::enumerate_modes(const Rep& r, const std::vector<int>& var_classes, const std::vector<int>& fixed_sub,
                            const SymMode& seed, const std::function<void(const SymMode&)>& f) const {
  const SymmetricGame& g = hl();
  std::vector<std::vector<int>> used(r.subs.size());
  for (std::size_t i = 0; i < r.subs.size(); ++i) used[i].assign(r.subs[i].size(), 0);
  SymMode cur = seed;
  for (std::size_t v = 0; v < seed.size(); ++v) {
    int& u = used[var_classes[v]][seed[v].first];
    u = std::max(u, seed[v].second);
  }
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == var_classes.size()) {
      f(cur);
      return;
    }
    int i = var_classes[v];
    bool ordered = g.classes[i].ordered;
    int lo = 0, hi = static_cast<int>(r.subs[i].size());
    if (fixed_sub.size() > v && fixed_sub[v] >= 0) lo = fixed_sub[v], hi = lo + 1;
    for (int j = lo; j < hi; ++j) {
      int card = r.subs[i][j].card;
      int kmax = ordered ? card : std::min(used[i][j] + 1, card);
      for (int k = 1; k <= kmax; ++k) {
        int saved = used[i][j];
        used[i][j] = std::max(saved, k);
        cur.emplace_back(j, k);
        self(self, v + 1);
        cur.pop_back();
        used[i][j] = saved;
      }
    }
  };
  rec(rec, seed.size());
}

bool Canon::guard_on_mode(const Rep& r, int t, const SymMode& sm, std::size_t off) const {
  const Transition& tr = hl().transitions[t];
  for (const Literal& l : tr.guard) {
    switch (l.kind) {
      case Literal::Eq:
        if (sm[off + l.a] != sm[off + l.b]) return false;
        break;
      case Literal::Neq:
        if (sm[off + l.a] == sm[off + l.b]) return false;
        break;
      case Literal::In:
        if (r.subs[tr.var_class[l.a]][sm[off + l.a].first].q != l.b) return false;
        break;
    }
  }
  return true;
}

std::vector<SymMode> Canon::symbolic_modes(const Rep& r, int t) const {
  std::vector<SymMode> out;
  const auto& sig = hl().transitions[t].var_class;
  enumerate_modes(r, sig, {}, {}, [&](const SymMode& sm) {
    if (guard_on_mode(r, t, sm, 0)) out.push_back(sm);
  });
  return out;
}

// Concrete modes counted for variables from `from` on, given the earlier ones.
long long Canon::multiplicity(const Rep& r, const std::vector<int>& var_classes, const SymMode& sm,
                              std::size_t from) const {
  std::set<std::tuple<int, int, int>> before, after;
  for (std::size_t v = 0; v < sm.size(); ++v) {
    if (hl().classes[var_classes[v]].ordered) continue;
    auto key = std::make_tuple(var_classes[v], sm[v].first, sm[v].second);
    (v < from ? before : after).insert(key);
  }
  long long m = 1;
  std::set<std::pair<int, int>> groups;
  for (auto& [i, j, k] : after) groups.insert({i, j});
  for (auto [i, j] : groups) {
    long long a = 0, b = 0;
    for (auto& [i2, j2, k2] : before) a += i2 == i && j2 == j;
    for (auto& [i2, j2, k2] : after)
      if (i2 == i && j2 == j && !before.count({i2, j2, k2})) ++b;
    m *= falling(r.subs[i][j].card - a, b);
  }
  return m;
}

SplitResult Canon::refine(const Rep& r, const std::vector<std::vector<int>>& pieces) const {
  const SymmetricGame& g = hl();
  SplitResult s;
  std::vector<std::vector<std::vector<int>>> parts(r.subs.size());  // old subclass -> new subclasses
  s.rep.subs.resize(r.subs.size());
  s.h.resize(r.subs.size());
  for (std::size_t i = 0; i < r.subs.size(); ++i) {
    parts[i].resize(r.subs[i].size());
    for (std::size_t j = 0; j < r.subs[i].size(); ++j) {
      const Subclass& z = r.subs[i][j];
      int p = g.classes[i].ordered ? z.card : std::min(pieces[i][j], z.card);
      for (int k = 0; k < p; ++k) {
        parts[i][j].push_back(static_cast<int>(s.rep.subs[i].size()));
        s.rep.subs[i].push_back({z.q, 1});
        s.h[i].push_back(static_cast<int>(j));
      }
      if (z.card > p) {
        parts[i][j].push_back(static_cast<int>(s.rep.subs[i].size()));
        s.rep.subs[i].push_back({z.q, z.card - p});
        s.h[i].push_back(static_cast<int>(j));
      }
    }
  }
  for (const RepEntry& e : r.entries) {
    const auto& type = g.places[e.place].type;
    std::vector<std::vector<int>> choices;
    for (std::size_t k = 0; k < type.size(); ++k) choices.push_back(parts[type[k]][e.tuple[k]]);
    product(choices, [&](const std::vector<int>& tuple) {
      RepEntry x;
      x.place = e.place;
      x.tuple = tuple;
      x.kind = e.kind;
      for (const Inst& in : e.k) {
        const auto& sig = g.transitions[in.trans].var_class;
        std::vector<std::vector<int>> ac;
        for (std::size_t v = 0; v < sig.size(); ++v) ac.push_back(parts[sig[v]][in.args[v]]);
        const Arc* arc = nullptr;
        for (int ai : g.place_out_arcs[e.place])
          if (g.arcs[ai].trans == in.trans) arc = &g.arcs[ai];
        product(ac, [&](const std::vector<int>& args) {
          Inst ni{in.trans, args};
          if (arc && arc_matches(s.rep, *arc, args, tuple) && guard_satisfiable(s.rep, ni)) x.k.push_back(std::move(ni));
        });
      }
      s.rep.entries.push_back(std::move(x));
    });
  }
  sort_entries(s.rep);
  return s;
}

SplitResult Canon::split(const Rep& r, const std::vector<int>& var_classes, const SymMode& sm) const {
  std::vector<std::vector<int>> pieces(r.subs.size());
  for (std::size_t i = 0; i < r.subs.size(); ++i) pieces[i].assign(r.subs[i].size(), 0);
  for (std::size_t v = 0; v < sm.size(); ++v) {
    int& p = pieces[var_classes[v]][sm[v].first];
    p = std::max(p, sm[v].second);
  }
  SplitResult s = refine(r, pieces);
  // Pieces of subclass j start at the first new subclass mapped to j.
  for (std::size_t v = 0; v < sm.size(); ++v) {
    const auto& h = s.h[var_classes[v]];
    int start = static_cast<int>(std::find(h.begin(), h.end(), sm[v].first) - h.begin());
    s.var_piece.push_back(start + sm[v].second - 1);
  }
  return s;
}

SplitResult Canon::split(const Rep& r, int t, const SymMode& sm) const {
  return split(r, hl().transitions[t].var_class, sm);
}

SplitResult Canon::split_full(const Rep& r) const {
  std::vector<std::vector<int>> pieces(r.subs.size());
  for (std::size_t i = 0; i < r.subs.size(); ++i)
    for (const Subclass& z : r.subs[i]) pieces[i].push_back(z.card);
  return refine(r, pieces);
}

int Canon::representative_mode(const Rep& r, int t, const SymMode& sm) const {
  Fibers f = fibers0(r);
  const auto& sig = hl().transitions[t].var_class;
  std::vector<int> mode;
  for (std::size_t v = 0; v < sm.size(); ++v) mode.push_back(f[sig[v]][sm[v].first][sm[v].second - 1]);
  return pt().transition_id(t, mode);
}

std::vector<int> Canon::concrete_modes(const Rep& r, int t, const SymMode& sm) const {
  const PTGame& p = pt();
  Assignment a = canonical_assignment(r);
  Fibers f = fibers0(r);
  const auto& sig = hl().transitions[t].var_class;
  std::vector<int> out;
  for (int tau = 0; tau < p.num_transitions(); ++tau) {
    if (p.trans_hl[tau] != t) continue;
    const auto& mode = p.trans_mode[tau];
    SymMode s;
    std::map<std::pair<int, int>, std::vector<int>> seen;  // (class, subclass) -> colors in first-use order
    for (std::size_t v = 0; v < mode.size(); ++v) {
      int i = sig[v], j = a.sub[i][mode[v]];
      if (hl().classes[i].ordered) {
        const auto& fib = f[i][j];
        s.emplace_back(j, static_cast<int>(std::find(fib.begin(), fib.end(), mode[v]) - fib.begin()) + 1);
        continue;
      }
      auto& order = seen[{i, j}];
      auto it = std::find(order.begin(), order.end(), mode[v]);
      if (it == order.end()) {
        order.push_back(mode[v]);
        it = order.end() - 1;
      }
      s.emplace_back(j, static_cast<int>(it - order.begin()) + 1);
    }
    if (s == sm) out.push_back(tau);
  }
  return out;
}

int Canon::pt_place_of(const Fibers& f, int place, const std::vector<int>& tuple) const {
  const auto& type = hl().places[place].type;
  std::vector<int> colors;
  for (std::size_t k = 0; k < tuple.size(); ++k) colors.push_back(f[type[k]][tuple[k]].at(0));
  return pt().place_id(place, colors);
}

void Canon::resolve_choices(const Rep& full, const Move& base_move, const Visit& visit) const {
  const PTGame& p = pt();
  Fibers f = fibers0(full);
  Assignment a = canonical_assignment(full);
  std::vector<std::size_t> targets;
  std::vector<int> places;
  for (std::size_t i = 0; i < full.entries.size(); ++i)
    if (full.entries[i].kind != RepEntry::Set) {
      targets.push_back(i);
      places.push_back(pt_place_of(f, full.entries[i].place, full.entries[i].tuple));
    }
  std::vector<std::vector<int>> choice;
  for (int pl : places) choice.push_back(iota_vec(static_cast<int>(dg_->options(pl).size())));
  product(choice, [&](const std::vector<int>& idx) {
    Rep next = full;
    Move m = base_move;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      std::uint64_t mask = dg_->options(places[j])[idx[j]];
      RepEntry& e = next.entries[targets[j]];
      e.kind = RepEntry::Set;
      e.k.clear();
      const auto& post = p.postset[places[j]];
      for (std::uint64_t rest = mask; rest; rest &= rest - 1) e.k.push_back(inst_of(post[std::countr_zero(rest)], a));
      std::sort(e.k.begin(), e.k.end());
      m.commit.push_back({places[j], mask});
    }
    visit(m, canonicalize_rep(next));
  });
}

void Canon::top_successors(const Rep& r, const Visit& visit) const {
  if (std::none_of(r.entries.begin(), r.entries.end(), [](const RepEntry& e) { return e.kind == RepEntry::Top; }))
    return;
  resolve_choices(split_full(r).rep, Move{}, visit);
}

void Canon::fire_successors(const Rep& r, int t, const SymMode& sm, const Visit& visit) const {
  const SymmetricGame& g = hl();
  SplitResult s = split(r, t, sm);
  Inst inst{t, s.var_piece};
  if (!instance_enabled(s.rep, inst, true)) throw std::logic_error("firing a disabled symbolic instance");
  Rep x;
  x.subs = s.rep.subs;
  std::set<std::pair<int, std::vector<int>>> consumed;
  for (int ai : g.in_arcs[t])
    for (auto& tuple : arc_tuples(s.rep, g.arcs[ai], inst.args)) consumed.insert({g.arcs[ai].place, tuple});
  for (const RepEntry& e : s.rep.entries)
    if (!consumed.count({e.place, e.tuple})) x.entries.push_back(e);
  bool top = !dg_->semantics().top_after_environment_only || g.env_preset[t];
  bool pending = false;
  for (int ai : g.out_arcs[t]) {
    const Arc& arc = g.arcs[ai];
    const Place& pl = g.places[arc.place];
    for (auto& tuple : arc_tuples(s.rep, arc, inst.args)) {
      RepEntry e;
      e.place = arc.place;
      e.tuple = tuple;
      if (!pl.system) {
        e.k = post_instances(s.rep, arc.place, tuple);
      } else {
        e.kind = top ? RepEntry::Top : RepEntry::Pending;
        pending |= !top;
      }
      if (std::any_of(x.entries.begin(), x.entries.end(),
                      [&](const RepEntry& o) { return o.place == e.place && o.tuple == e.tuple; }))
        throw ClassViolation("unsafe marking: firing " + g.transitions[t].name + " marks " + pl.name + " twice");
      x.entries.push_back(std::move(e));
    }
  }
  long long env = 0;
  for (const RepEntry& e : x.entries) {
    if (g.places[e.place].system) continue;
    long long n = 1;
    const auto& type = g.places[e.place].type;
    for (std::size_t k = 0; k < e.tuple.size(); ++k) n *= x.subs[type[k]][e.tuple[k]].card;
    env += n;
  }
  if (env > 1) throw ClassViolation("firing " + g.transitions[t].name + " creates a second environment token");
  sort_entries(x);
  Move m{representative_mode(r, t, sm), {}};
  if (!pending) {
    visit(m, canonicalize_rep(x));
    return;
  }
  resolve_choices(split_full(x).rep, m, visit);
}

SymAnalysis Canon::analyze(const Rep& r) const {
  const SymmetricGame& g = hl();
  const PTGame& p = pt();
  DecisionSet d = instantiate(r);
  Marking m = dg_->marking(d);
  auto entry = [&](int place) -> const Entry* {
    auto it = std::lower_bound(d.entries.begin(), d.entries.end(), Entry{place, 0},
                               [](const Entry& a, const Entry& b) { return a.place < b.place; });
    return (it != d.entries.end() && it->place == place) ? &*it : nullptr;
  };
  SymAnalysis out;
  Flags& f = out.flags;
  for (const Entry& e : d.entries) {
    f.has_top |= e.k == kTop;
    f.bad |= p.place_bad[e.place];
  }
  bool any = false;
  for (int t = 0; t < static_cast<int>(g.transitions.size()); ++t) {
    if (g.in_arcs[t].empty()) continue;
    for (const SymMode& sm : symbolic_modes(r, t)) {
      int tau = representative_mode(r, t, sm);
      if (tau < 0 || !pt_enabled(p, m, tau)) continue;
      any = true;
      if (f.has_top) continue;
      bool committed = std::all_of(p.pre[tau].begin(), p.pre[tau].end(), [&](int q) {
        const Entry* e = entry(q);
        return e->k != kTop && (e->k >> dg_->local_index(q, tau) & 1);
      });
      if (committed) out.enabled.push_back({t, sm, multiplicity(r, g.transitions[t].var_class, sm, 0)});
    }
  }
  f.terminating = !any;
  if (!f.has_top) {
    f.env_dependent = std::all_of(out.enabled.begin(), out.enabled.end(),
                                  [&](const SymInstance& si) { return g.env_preset[si.trans]; });
    f.deadlock = any && out.enabled.empty();
    f.nondeterministic = dg_->classify(d).nondeterministic;
  }
  return out;
}

SymAnalysis Canon::analyze_symbolic(const Rep& r) const {
  const SymmetricGame& g = hl();
  SymAnalysis out;
  Flags& f = out.flags;
  for (const RepEntry& e : r.entries) {
    f.has_top |= e.kind == RepEntry::Top;
    f.bad |= g.places[e.place].bad;
  }
  bool any = false;
  long long total = 0;
  for (int t = 0; t < static_cast<int>(g.transitions.size()); ++t) {
    if (g.in_arcs[t].empty()) continue;
    for (const SymMode& sm : symbolic_modes(r, t)) {
      SplitResult s = split(r, t, sm);
      Inst inst{t, s.var_piece};
      if (!instance_enabled(s.rep, inst, false)) continue;
      any = true;
      if (f.has_top || !instance_enabled(s.rep, inst, true)) continue;
      long long mult = multiplicity(r, g.transitions[t].var_class, sm, 0);
      total += mult;
      out.enabled.push_back({t, sm, mult});
    }
  }
  f.terminating = !any;
  if (!f.has_top) {
    f.env_dependent = std::all_of(out.enabled.begin(), out.enabled.end(),
                                  [&](const SymInstance& si) { return g.env_preset[si.trans]; });
    f.deadlock = any && out.enabled.empty();
    f.nondeterministic = total >= 2 && nondeterministic(r);
  }
  return out;
}

// Some system token is consumed by at least two enabled concrete instances.
bool Canon::nondeterministic(const Rep& r) const {
  const SymmetricGame& g = hl();
  for (const RepEntry& e : r.entries) {
    const Place& pl = g.places[e.place];
    if (!pl.system || e.kind != RepEntry::Set || e.k.empty()) continue;
    std::vector<int> consumers;
    for (int ai : g.place_out_arcs[e.place]) consumers.push_back(g.arcs[ai].trans);
    std::sort(consumers.begin(), consumers.end());
    consumers.erase(std::unique(consumers.begin(), consumers.end()), consumers.end());
    std::size_t width = pl.type.size();
    bool found = false;
    enumerate_modes(r, pl.type, e.tuple, {}, [&](const SymMode& token) {
      if (found) return;
      long long sum = 0;
      for (int t : consumers) {
        std::vector<int> classes = pl.type;
        const auto& sig = g.transitions[t].var_class;
        classes.insert(classes.end(), sig.begin(), sig.end());
        std::vector<int> fixed = e.tuple;
        fixed.resize(classes.size(), -1);
        enumerate_modes(r, classes, fixed, token, [&](const SymMode& jm) {
          if (sum >= 2 || !guard_on_mode(r, t, jm, width)) return;
          SplitResult s = split(r, classes, jm);
          std::vector<int> tuple(s.var_piece.begin(), s.var_piece.begin() + static_cast<long>(width));
          Inst inst{t, std::vector<int>(s.var_piece.begin() + static_cast<long>(width), s.var_piece.end())};
          if (!instance_enabled(s.rep, inst, true)) return;
          bool uses = false;
          for (int ai : g.in_arcs[t]) {
            if (g.arcs[ai].place != e.place) continue;
            auto ts = arc_tuples(s.rep, g.arcs[ai], inst.args);
            uses |= std::binary_search(ts.begin(), ts.end(), tuple);
          }
          if (uses) sum += multiplicity(r, classes, jm, width);
        });
        if (sum >= 2) break;
      }
      found = sum >= 2;
    });
    if (found) return true;
  }
  return false;
}

void Canon::successors(const Rep& r, const SymAnalysis& a, const Visit& visit) const {
  std::unordered_set<std::string> seen;
  Visit once = [&](const Move& m, Canonical&& c) {
    if (seen.insert(c.key).second) visit(m, std::move(c));
  };
  if (a.flags.has_top) {
    top_successors(r, once);
    return;
  }
  const SymmetricGame& g = hl();
  for (const SymInstance& si : a.enabled)
    if (a.flags.env_dependent || !g.env_preset[si.trans]) fire_successors(r, si.trans, si.mode, once);
}

// ---------------------------------------------------------------- rendering

namespace {

std::string sub_name(int cls, int sub) {
  if (sub < 0) return "<>";
  return "Z" + std::to_string(cls + 1) + "^" + std::to_string(sub + 1);
}

std::string join_args(const std::vector<std::string>& parts) {
  if (parts.empty()) return "";
  if (parts.size() == 1) return "." + parts[0];
  std::string s = ".(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + ")";
}

}  // namespace

std::string Canon::render(const RepEntry& e) const {
  const SymmetricGame& g = hl();
  const auto& type = g.places[e.place].type;
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < e.tuple.size(); ++k) parts.push_back(sub_name(type[k], e.tuple[k]));
  std::string s = "(" + g.places[e.place].name + join_args(parts) + ", ";
  if (e.kind == RepEntry::Top) return s + "TOP)";
  if (e.kind == RepEntry::Pending) return s + "?)";
  s += '{';
  for (std::size_t m = 0; m < e.k.size(); ++m) {
    const auto& sig = g.transitions[e.k[m].trans].var_class;
    std::vector<std::string> args;
    for (std::size_t v = 0; v < sig.size(); ++v) args.push_back(sub_name(sig[v], e.k[m].args[v]));
    s += (m ? "," : "") + g.transitions[e.k[m].trans].name + join_args(args);
  }
  return s + "})";
}

std::string Canon::render(const Rep& r) const {
  std::string card = "card:", stat = "static:";
  for (std::size_t i = 0; i < r.subs.size(); ++i)
    for (std::size_t j = 0; j < r.subs[i].size(); ++j) {
      std::string n = " " + sub_name(static_cast<int>(i), static_cast<int>(j)) + "=";
      card += n + std::to_string(r.subs[i][j].card);
      stat += n + std::to_string(r.subs[i][j].q + 1);
    }
  std::string s = card + '\n' + stat + '\n';
  for (const RepEntry& e : r.entries) s += render(e) + '\n';
  return s;
}

std::string Canon::render_mode(int t, const SymMode& sm) const {
  const SymmetricGame& g = hl();
  const auto& sig = g.transitions[t].var_class;
  std::vector<std::string> args;
  for (std::size_t v = 0; v < sm.size(); ++v)
    args.push_back(sub_name(sig[v], sm[v].first) + ":" + std::to_string(sm[v].second));
  return g.transitions[t].name + join_args(args);
}

}  // namespace hlpg
