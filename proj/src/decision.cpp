#include "hlpg/decision.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_set>

namespace hlpg {

std::size_t DecisionSetHash::operator()(const DecisionSet& d) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ d.entries.size();
  for (const Entry& e : d.entries) {
    h ^= static_cast<std::uint64_t>(e.place) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= e.k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string to_string(const Flags& f) {
  std::string s;
  auto add = [&](bool b, const char* n) {
    if (!b) return;
    if (!s.empty()) s += ',';
    s += n;
  };
  add(f.has_top, "top");
  add(f.env_dependent, "env");
  add(f.bad, "bad");
  add(f.deadlock, "deadlock");
  add(f.terminating, "terminating");
  add(f.nondeterministic, "nondet");
  return s.empty() ? "-" : s;
}

std::string Semantics::name() const {
  if (top_after_environment_only && exclude_coenabled) return "pruned";
  if (!top_after_environment_only && !exclude_coenabled) return "unrestricted";
  return std::string("custom(") + (top_after_environment_only ? "env-top" : "all-top") + "," +
         (exclude_coenabled ? "co" : "any") + ")";
}

namespace {

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept {
    std::uint64_t h = m.size();
    for (int p : m) h = h * 0x100000001b3ull ^ static_cast<std::uint64_t>(p);
    return static_cast<std::size_t>(h);
  }
};

const Entry* find_entry(const DecisionSet& d, int place) {
  auto it = std::lower_bound(d.entries.begin(), d.entries.end(), place,
                             [](const Entry& e, int p) { return e.place < p; });
  return (it != d.entries.end() && it->place == place) ? &*it : nullptr;
}

}  // namespace

DecisionGame::DecisionGame(const PTGame& pt, Semantics sem, std::size_t marking_cap) : pt_(&pt), sem_(sem) {
  conflict_.resize(pt.num_places());
  for (int p = 0; p < pt.num_places(); ++p) {
    if (pt.postset[p].size() > 63)
      throw ModelError("place " + pt.place_name[p] + " has more than 63 output transitions");
    conflict_[p].assign(pt.postset[p].size(), 0);
  }
  if (sem_.exclude_coenabled) compute_coenabled(marking_cap);

  options_.resize(pt.num_places());
  for (int p = 0; p < pt.num_places(); ++p) {
    std::size_t n = pt.postset[p].size();
    if (!pt.place_system[p]) {
      options_[p] = {full_mask(p)};
      continue;
    }
    if (n > 24) throw CapExceeded("commitment lattice of " + pt.place_name[p] + " is too large");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      bool ok = true;
      for (std::uint64_t rest = m; rest && ok; rest &= rest - 1) {
        int i = std::countr_zero(rest);
        ok = (m & conflict_[p][i]) == 0;
      }
      if (ok) options_[p].push_back(m);
    }
  }
}

void DecisionGame::compute_coenabled(std::size_t cap) {
  const PTGame& pt = *pt_;
  std::unordered_set<Marking, MarkingHash> seen{pt.initial};
  std::deque<Marking> queue{pt.initial};
  std::vector<int> en;
  while (!queue.empty()) {
    Marking m = std::move(queue.front());
    queue.pop_front();
    if (std::any_of(m.begin(), m.end(), [&](int p) { return pt.place_bad[p]; })) continue;
    en.clear();
    for (int p : m)
      for (int t : pt.postset[p])
        if (pt_enabled(pt, m, t)) en.push_back(t);
    std::sort(en.begin(), en.end());
    en.erase(std::unique(en.begin(), en.end()), en.end());
    for (int p : m) {
      if (!pt.place_system[p]) continue;
      const auto& post = pt.postset[p];
      for (std::size_t i = 0; i < post.size(); ++i) {
        if (!std::binary_search(en.begin(), en.end(), post[i])) continue;
        for (std::size_t j = i + 1; j < post.size(); ++j) {
          if (!std::binary_search(en.begin(), en.end(), post[j])) continue;
          conflict_[p][i] |= std::uint64_t{1} << j;
          conflict_[p][j] |= std::uint64_t{1} << i;
        }
      }
    }
    for (int t : en) {
      Marking next = pt_fire(pt, m, t);
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw CapExceeded("reachable markings exceed the cap of " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
}

std::uint64_t DecisionGame::full_mask(int place) const {
  std::size_t n = pt_->postset[place].size();
  return n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
}

int DecisionGame::local_index(int place, int trans) const {
  const auto& post = pt_->postset[place];
  auto it = std::lower_bound(post.begin(), post.end(), trans);
  return (it != post.end() && *it == trans) ? static_cast<int>(it - post.begin()) : -1;
}

bool DecisionGame::coenabled(int t1, int t2) const {
  for (int p : pt_->pre[t1]) {
    if (!pt_->place_system[p]) continue;
    int j = local_index(p, t2);
    if (j >= 0 && (conflict_[p][local_index(p, t1)] >> j & 1)) return true;
  }
  return false;
}

DecisionSet DecisionGame::initial() const {
  DecisionSet d;
  int env = 0;
  for (int p : pt_->initial) {
    if (!pt_->place_system[p]) ++env;
    d.entries.push_back({p, pt_->place_system[p] ? kTop : full_mask(p)});
  }
  if (env > 1) throw ClassViolation("initial marking holds more than one environment token");
  return d;
}

Marking DecisionGame::marking(const DecisionSet& d) const {
  Marking m;
  for (const Entry& e : d.entries) m.push_back(e.place);
  return m;
}

std::vector<int> DecisionGame::enabled(const DecisionSet& d) const {
  std::vector<int> out;
  for (const Entry& e : d.entries) {
    if (e.k == kTop) continue;
    const auto& post = pt_->postset[e.place];
    for (std::uint64_t rest = e.k; rest; rest &= rest - 1) {
      int t = post[std::countr_zero(rest)];
      bool ok = true;
      for (int q : pt_->pre[t]) {
        const Entry* f = find_entry(d, q);
        if (!f || f->k == kTop || !(f->k >> local_index(q, t) & 1)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool DecisionGame::marking_enables_any(const DecisionSet& d) const {
  Marking m = marking(d);
  for (int p : m)
    for (int t : pt_->postset[p])
      if (pt_enabled(*pt_, m, t)) return true;
  return false;
}

Flags DecisionGame::classify(const DecisionSet& d) const {
  Flags f;
  for (const Entry& e : d.entries) {
    f.has_top |= e.k == kTop;
    f.bad |= pt_->place_bad[e.place];
  }
  bool any = marking_enables_any(d);
  f.terminating = !any;
  if (!f.has_top) {
    std::vector<int> en = enabled(d);
    f.env_dependent = std::all_of(en.begin(), en.end(), [&](int t) { return pt_->trans_env[t]; });
    f.deadlock = any && en.empty();
    for (std::size_t i = 0; i < en.size() && !f.nondeterministic; ++i)
      for (std::size_t j = i + 1; j < en.size() && !f.nondeterministic; ++j)
        for (int p : pt_->pre[en[i]])
          if (pt_->place_system[p] && std::binary_search(pt_->pre[en[j]].begin(), pt_->pre[en[j]].end(), p)) {
            f.nondeterministic = true;
            break;
          }
  }
  return f;
}

void DecisionGame::top_successors(const DecisionSet& d, const Visit& visit) const {
  std::vector<std::size_t> tops;
  for (std::size_t i = 0; i < d.entries.size(); ++i)
    if (d.entries[i].k == kTop) tops.push_back(i);
  if (tops.empty()) return;
  std::vector<std::size_t> idx(tops.size(), 0);
  Move m;
  while (true) {
    DecisionSet next = d;
    m.commit.clear();
    for (std::size_t j = 0; j < tops.size(); ++j) {
      Entry& e = next.entries[tops[j]];
      e.k = options_[e.place][idx[j]];
      m.commit.push_back(e);
    }
    visit(m, std::move(next));
    int j = static_cast<int>(tops.size()) - 1;
    for (; j >= 0; --j) {
      if (++idx[j] < options_[d.entries[tops[j]].place].size()) break;
      idx[j] = 0;
    }
    if (j < 0) return;
  }
}

void DecisionGame::add_token(DecisionSet& d, int place, std::uint64_t k, int by_trans) const {
  auto it = std::lower_bound(d.entries.begin(), d.entries.end(), place,
                             [](const Entry& e, int p) { return e.place < p; });
  if (it != d.entries.end() && it->place == place)
    throw ClassViolation("unsafe marking: firing " + pt_->trans_name[by_trans] + " marks " + pt_->place_name[place] +
                         " twice");
  d.entries.insert(it, Entry{place, k});
}

DecisionSet DecisionGame::fire_base(const DecisionSet& d, int t, bool all_top, std::vector<int>* pending) const {
  const PTGame& pt = *pt_;
  DecisionSet base;
  base.entries.reserve(d.entries.size() + pt.post[t].size());
  std::size_t consumed = 0;
  for (const Entry& e : d.entries) {
    if (std::binary_search(pt.pre[t].begin(), pt.pre[t].end(), e.place))
      ++consumed;
    else
      base.entries.push_back(e);
  }
  if (consumed != pt.pre[t].size()) throw std::logic_error("firing " + pt.trans_name[t] + " without its preset");
  bool top = all_top || !sem_.top_after_environment_only || pt.trans_env[t];
  int env = 0;
  for (const Entry& e : base.entries) env += !pt.place_system[e.place];
  for (int p : pt.post[t]) {
    if (!pt.place_system[p]) {
      ++env;
      add_token(base, p, full_mask(p), t);
    } else if (top) {
      add_token(base, p, kTop, t);
    } else {
      add_token(base, p, 0, t);
      if (pending) pending->push_back(p);
    }
  }
  if (env > 1) throw ClassViolation("firing " + pt.trans_name[t] + " creates a second environment token");
  return base;
}

void DecisionGame::fire_successors(const DecisionSet& d, int t, const Visit& visit) const {
  std::vector<int> pending;
  DecisionSet base = fire_base(d, t, false, &pending);
  Move m{t, {}};
  if (pending.empty()) {
    visit(m, std::move(base));
    return;
  }
  std::vector<std::size_t> idx(pending.size(), 0);
  while (true) {
    DecisionSet next = base;
    m.commit.clear();
    for (std::size_t j = 0; j < pending.size(); ++j) {
      Entry e{pending[j], options_[pending[j]][idx[j]]};
      set_commitment(next, e);
      m.commit.push_back(e);
    }
    visit(m, std::move(next));
    int j = static_cast<int>(pending.size()) - 1;
    for (; j >= 0; --j) {
      if (++idx[j] < options_[pending[j]].size()) break;
      idx[j] = 0;
    }
    if (j < 0) return;
  }
}

void DecisionGame::successors(const DecisionSet& d, const Flags& f, const Visit& visit) const {
  if (f.has_top) {
    top_successors(d, visit);
    return;
  }
  for (int t : enabled(d))
    if (f.env_dependent || !pt_->trans_env[t]) fire_successors(d, t, visit);
}

DecisionSet DecisionGame::fire(const DecisionSet& d, int t) const { return fire_base(d, t, true, nullptr); }

void DecisionGame::set_commitment(DecisionSet& d, const Entry& c) const {
  auto it = std::lower_bound(d.entries.begin(), d.entries.end(), c.place,
                             [](const Entry& e, int p) { return e.place < p; });
  if (it == d.entries.end() || it->place != c.place)
    throw std::logic_error("commitment for unmarked place " + pt_->place_name[c.place]);
  it->k = c.k;
}

DecisionSet DecisionGame::apply_move(const DecisionSet& d, const Move& m) const {
  if (m.trans < 0) {
    DecisionSet out = d;
    for (const Entry& c : m.commit) set_commitment(out, c);
    return out;
  }
  std::vector<int> pending;
  DecisionSet out = fire_base(d, m.trans, false, &pending);
  if (pending.size() != m.commit.size()) throw std::logic_error("move " + render(m) + " does not fit the semantics");
  for (const Entry& c : m.commit) set_commitment(out, c);
  return out;
}

DecisionSet DecisionGame::apply(const DecisionSet& d, const NodeMap& s) const {
  DecisionSet out;
  out.entries.reserve(d.entries.size());
  for (const Entry& e : d.entries) {
    int p = s.place[e.place];
    std::uint64_t k = e.k;
    if (k != kTop) {
      k = 0;
      const auto& post = pt_->postset[e.place];
      for (std::uint64_t rest = e.k; rest; rest &= rest - 1)
        k |= std::uint64_t{1} << local_index(p, s.trans[post[std::countr_zero(rest)]]);
    }
    out.entries.push_back({p, k});
  }
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

Move DecisionGame::apply(const Move& m, const NodeMap& s) const {
  Move out;
  out.trans = m.trans < 0 ? -1 : s.trans[m.trans];
  DecisionSet tmp;
  tmp.entries = m.commit;
  std::sort(tmp.entries.begin(), tmp.entries.end());
  out.commit = apply(tmp, s).entries;
  return out;
}

namespace {

std::string render_entry(const PTGame& pt, const Entry& e) {
  std::string s = "(" + pt.place_name[e.place] + ", ";
  if (e.k == kTop) return s + "TOP)";
  s += '{';
  bool first = true;
  const auto& post = pt.postset[e.place];
  for (std::size_t i = 0; i < post.size(); ++i) {
    if (!(e.k >> i & 1)) continue;
    if (!first) s += ',';
    s += pt.trans_name[post[i]];
    first = false;
  }
  return s + "})";
}

}  // namespace

std::string DecisionGame::render(const DecisionSet& d) const {
  std::string s;
  for (const Entry& e : d.entries) {
    if (!s.empty()) s += '\n';
    s += render_entry(*pt_, e);
  }
  return s;
}

std::string DecisionGame::render(const Move& m) const {
  std::string s = m.trans < 0 ? std::string("TOP") : pt_->trans_name[m.trans];
  for (const Entry& e : m.commit) s += " " + render_entry(*pt_, e);
  return s;
}

}  // namespace hlpg
