#include "hlpg/game.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace hlpg {

std::string to_string(Approach a) {
  switch (a) {
    case Approach::Explicit: return "explicit";
    case Approach::Membership: return "membership";
    case Approach::Canonical: return "canonical";
  }
  return "?";
}

Approach parse_approach(const std::string& s) {
  if (s == "explicit") return Approach::Explicit;
  if (s == "membership") return Approach::Membership;
  if (s == "canonical") return Approach::Canonical;
  throw std::invalid_argument("unknown approach '" + s + "' (expected explicit, membership or canonical)");
}

int Arena::num_accepting() const { return static_cast<int>(std::count(accepting.begin(), accepting.end(), true)); }

namespace {

// Runs f(i) for i in [0, n) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(threads, n); ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t group_order(const SymmetricGame& g) {
  std::size_t total = 1;
  for (const ColorClass& c : g.classes) {
    if (c.ordered) {
      total *= c.statics.size() > 1 ? 1 : static_cast<std::size_t>(c.size());
      continue;
    }
    for (const auto& st : c.statics)
      for (std::size_t k = 2; k <= st.size(); ++k) total *= k;
  }
  return total;
}

}  // namespace

std::unique_ptr<GameGraph> GameGraph::build(const DecisionGame& dg, const BuildOptions& opt) {
  std::unique_ptr<GameGraph> gg(new GameGraph);
  gg->dg_ = &dg;
  gg->approach_ = opt.approach;
  gg->group_size_ = group_order(*dg.pt().hl);
  if (opt.approach == Approach::Membership) {
    gg->group_ = enumerate_symmetries(*dg.pt().hl);
    for (const Symmetry& s : gg->group_) gg->lifts_.push_back(lift(dg.pt(), s));
  }
  if (opt.approach == Approach::Canonical) {
    gg->canon_ = std::make_unique<Canon>(dg);
    gg->build_canonical(opt);
  } else {
    gg->build_explicit(opt);
  }
  return gg;
}

void GameGraph::finish_node(int node, const Flags& f) {
  arena_.flags[node] = f;
  arena_.player[node] = f.env_dependent ? 1 : 0;
  arena_.accepting[node] = f.accepting();
}

void GameGraph::add_edge(int src, int dst, const Move& m) {
  arena_.out[src].push_back(static_cast<int>(arena_.edges.size()));
  arena_.edges.push_back({src, dst, m});
}

namespace {

[[noreturn]] void cap_exceeded(std::size_t cap) {
  throw CapExceeded("arena exceeds the node cap of " + std::to_string(cap));
}

// Level-synchronous BFS from node 0: successors are computed in parallel, interned in order.
// Levels are processed in chunks so that the node cap stops the search early.
template <class Payload, class Expand, class Intern>
void bfs(std::vector<Payload>& payload, const BuildOptions& opt, Expand&& expand, Intern&& intern) {
  const std::size_t chunk = 256 * std::max(1u, opt.threads);
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (std::size_t lo = 0; lo < frontier.size(); lo += chunk) {
      std::size_t n = std::min(chunk, frontier.size() - lo);
      std::vector<Flags> flags(n);
      std::vector<decltype(expand(payload[0], flags[0]))> succ(n);
      parallel_for(n, opt.threads, [&](std::size_t i) { succ[i] = expand(payload[frontier[lo + i]], flags[i]); });
      for (std::size_t i = 0; i < n; ++i) {
        int src = frontier[lo + i];
        intern.finish(src, flags[i]);
        if (flags[i].closed()) {
          intern.edge(src, src, Move{});
          continue;
        }
        std::unordered_set<int> targets;
        for (auto& [move, value] : succ[i]) {
          auto [dst, fresh] = intern.node(std::move(value));
          if (fresh) next.push_back(dst);
          if (targets.insert(dst).second) intern.edge(src, dst, move);
        }
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

void GameGraph::build_explicit(const BuildOptions& opt) {
  const DecisionGame& dg = *dg_;
  auto new_node = [&](DecisionSet&& d) {
    if (sets_.size() >= opt.node_cap) cap_exceeded(opt.node_cap);
    int id = static_cast<int>(sets_.size());
    set_index_.emplace(d, id);
    sets_.push_back(std::move(d));
    arena_.flags.emplace_back();
    arena_.player.push_back(0);
    arena_.accepting.push_back(false);
    arena_.out.emplace_back();
    return id;
  };
  struct Intern {
    GameGraph* g;
    std::function<int(DecisionSet&&)> make;
    std::pair<int, bool> node(DecisionSet&& d) {
      if (g->approach_ == Approach::Membership) {
        for (const NodeMap& s : g->lifts_) {
          auto it = g->set_index_.find(g->dg_->apply(d, s));
          if (it != g->set_index_.end()) return {it->second, false};
        }
      } else {
        auto it = g->set_index_.find(d);
        if (it != g->set_index_.end()) return {it->second, false};
      }
      return {make(std::move(d)), true};
    }
    void finish(int n, const Flags& f) { g->finish_node(n, f); }
    void edge(int s, int d, const Move& m) { g->add_edge(s, d, m); }
  } intern{this, new_node};
  new_node(dg.initial());
  // A single node with more distinct successors than the cap allows (orbits may repeat up to
  // the group order under membership) already exceeds it; stop before enumerating them all.
  const std::size_t limit = opt.approach == Approach::Membership ? opt.node_cap * group_size_ : opt.node_cap;
  auto expand = [&](const DecisionSet& d, Flags& f) {
    std::vector<std::pair<Move, DecisionSet>> out;
    std::size_t check_at = limit;
    f = dg.classify(d);
    if (!f.closed())
      dg.successors(d, f, [&](const Move& m, DecisionSet&& n) {
        out.emplace_back(m, std::move(n));
        if (out.size() <= check_at) return;
        std::unordered_set<DecisionSet, DecisionSetHash> distinct;
        for (auto& o : out) distinct.insert(o.second);
        if (distinct.size() > limit) cap_exceeded(opt.node_cap);
        check_at = 2 * out.size();
      });
    return out;
  };
  bfs(sets_, opt, expand, intern);
}

void GameGraph::build_canonical(const BuildOptions& opt) {
  const Canon& cn = *canon_;
  auto new_node = [&](Canonical&& c) {
    if (reps_.size() >= opt.node_cap) cap_exceeded(opt.node_cap);
    int id = static_cast<int>(reps_.size());
    key_index_.emplace(std::move(c.key), id);
    reps_.push_back(std::move(c.rep));
    arena_.flags.emplace_back();
    arena_.player.push_back(0);
    arena_.accepting.push_back(false);
    arena_.out.emplace_back();
    return id;
  };
  struct Intern {
    GameGraph* g;
    std::function<int(Canonical&&)> make;
    std::pair<int, bool> node(Canonical&& c) {
      auto it = g->key_index_.find(c.key);
      if (it != g->key_index_.end()) return {it->second, false};
      return {make(std::move(c)), true};
    }
    void finish(int n, const Flags& f) { g->finish_node(n, f); }
    void edge(int s, int d, const Move& m) { g->add_edge(s, d, m); }
  } intern{this, new_node};
  new_node(cn.canonicalize(dg_->initial()));
  auto expand = [&](const Rep& r, Flags& f) {
    std::vector<std::pair<Move, Canonical>> out;
    SymAnalysis a = cn.analyze(r);
    f = a.flags;
    if (!f.closed())
      cn.successors(r, a, [&](const Move& m, Canonical&& c) {
        if (out.size() >= opt.node_cap) cap_exceeded(opt.node_cap);
        out.emplace_back(m, std::move(c));
      });
    return out;
  };
  bfs(reps_, opt, expand, intern);
}

DecisionSet GameGraph::anchor(int node) const {
  if (approach_ == Approach::Canonical) return canon_->instantiate(reps_.at(node));
  return sets_.at(node);
}

std::pair<int, Symmetry> GameGraph::resolve(const DecisionSet& d) const {
  const SymmetricGame& g = *dg_->pt().hl;
  if (approach_ == Approach::Canonical) {
    Canonical c = canon_->canonicalize(d);
    auto it = key_index_.find(c.key);
    if (it == key_index_.end()) throw std::out_of_range("decision set is not in the arena");
    return {it->second, c.gamma};
  }
  if (approach_ == Approach::Membership) {
    for (std::size_t i = 0; i < lifts_.size(); ++i) {
      auto it = set_index_.find(dg_->apply(d, lifts_[i]));
      if (it != set_index_.end()) return {it->second, group_[i]};
    }
    throw std::out_of_range("decision set is not in the arena");
  }
  auto it = set_index_.find(d);
  if (it == set_index_.end()) throw std::out_of_range("decision set is not in the arena");
  return {it->second, identity_symmetry(g)};
}

std::string GameGraph::render_node(int node) const {
  if (approach_ == Approach::Canonical) return canon_->render(reps_.at(node));
  return dg_->render(sets_.at(node));
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\l";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string GameGraph::to_dot() const {
  std::string s = "digraph arena {\n  node [fontname=\"monospace\"];\n";
  for (int v = 0; v < arena_.num_nodes(); ++v) {
    s += "  n" + std::to_string(v) + " [shape=box";
    if (arena_.player[v] == 0) s += ", style=filled, fillcolor=gray";
    if (arena_.accepting[v]) s += ", peripheries=2";
    s += ", label=\"#" + std::to_string(v) + " [" + to_string(arena_.flags[v]) + "]\\n" +
         dot_escape(render_node(v)) + "\\l\"];\n";
  }
  for (const ArenaEdge& e : arena_.edges)
    s += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) + " [label=\"" +
         dot_escape(e.src == e.dst && arena_.flags[e.src].closed() ? std::string() : dg_->render(e.move)) + "\"];\n";
  return s + "}\n";
}

// ---------------------------------------------------------------- Büchi solver

namespace {

// Attractor of `target` for `player` inside the subgame `in`; rank[v] = step at which v joined.
std::vector<bool> attractor(const Arena& a, const std::vector<bool>& in, const std::vector<bool>& target, int player,
                            std::vector<int>* rank) {
  int n = a.num_nodes();
  std::vector<std::vector<int>> pred(n);
  std::vector<int> count(n, 0);
  for (const ArenaEdge& e : a.edges)
    if (in[e.src] && in[e.dst]) {
      pred[e.dst].push_back(e.src);
      ++count[e.src];
    }
  std::vector<bool> attr(n, false);
  std::deque<int> queue;
  if (rank) rank->assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (in[v] && target[v]) {
      attr[v] = true;
      queue.push_back(v);
      if (rank) (*rank)[v] = 0;
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : pred[v]) {
      if (attr[u]) continue;
      if (a.player[u] == player || --count[u] == 0) {
        attr[u] = true;
        if (rank) (*rank)[u] = (*rank)[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return attr;
}

}  // namespace

Solution solve_buchi(const Arena& a) {
  int n = a.num_nodes();
  std::vector<bool> w(n, true);
  std::vector<int> rank;
  while (true) {
    std::vector<bool> f(n);
    for (int v = 0; v < n; ++v) f[v] = w[v] && a.accepting[v];
    std::vector<bool> attr = attractor(a, w, f, 0, &rank);
    std::vector<bool> trap(n);
    bool any = false;
    for (int v = 0; v < n; ++v) {
      trap[v] = w[v] && !attr[v];
      any |= trap[v];
    }
    if (!any) break;
    std::vector<bool> lose = attractor(a, w, trap, 1, nullptr);
    for (int v = 0; v < n; ++v)
      if (lose[v]) w[v] = false;
  }
  Solution s;
  s.win = w;
  s.strategy.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!w[v] || a.player[v] != 0) continue;
    for (int e : a.out[v]) {
      int d = a.edges[e].dst;
      if (!w[d]) continue;
      if (a.accepting[v] || (rank[d] >= 0 && rank[d] < rank[v])) {
        s.strategy[v] = e;
        break;
      }
    }
  }
  s.realizable = n > 0 && w[0];
  return s;
}

}  // namespace hlpg
