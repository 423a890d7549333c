#include "hlpg/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hlpg {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{{}, line, col};
    auto ident = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' ||
             static_cast<unsigned char>(ch) >= 0x80;
    };
    if (ident(c)) {
      std::size_t j = i;
      while (j < s.size() && ident(s[j])) ++j;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (s.substr(i, 2) == "->" || s.substr(i, 2) == "!=") {
      t.text = std::string(s.substr(i, 2));
      advance(2);
    } else if (std::string_view("{}()[]|:=&,").find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ModelError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                       ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  SymmetricGame run() {
    while (!at_end()) {
      const Token& t = peek();
      if (t.text == "game") {
        next();
        g_.name = ident("game name");
      } else if (t.text == "class") {
        parse_class();
      } else if (t.text == "place") {
        parse_place();
      } else if (t.text == "trans") {
        parse_trans();
      } else if (t.text == "arc") {
        parse_arc();
      } else {
        fail(t, "expected 'game', 'class', 'place', 'trans' or 'arc', got '" + t.text + "'");
      }
    }
    g_.finalize();
    return std::move(g_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SymmetricGame g_;

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    static const Token eof{"<end of input>", 0, 0};
    return at_end() ? eof : toks_[pos_];
  }
  Token next() {
    if (at_end()) {
      Token last = toks_.empty() ? Token{"", 1, 1} : toks_.back();
      throw ModelError("line " + std::to_string(last.line) + ": unexpected end of input");
    }
    return toks_[pos_++];
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ModelError("line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + msg);
  }
  void expect(const std::string& s) {
    Token t = next();
    if (t.text != s) fail(t, "expected '" + s + "', got '" + t.text + "'");
  }
  bool accept(const std::string& s) {
    if (!at_end() && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  static bool is_ident(const std::string& s) {
    return !s.empty() && (std::isalnum(static_cast<unsigned char>(s[0])) || s[0] == '_' ||
                          static_cast<unsigned char>(s[0]) >= 0x80);
  }
  std::string ident(const char* what) {
    Token t = next();
    if (!is_ident(t.text)) fail(t, std::string("expected ") + what + ", got '" + t.text + "'");
    return t.text;
  }
  bool name_taken(const std::string& n) const {
    return g_.place_index(n) >= 0 || g_.transition_index(n) >= 0;
  }

  void parse_class() {
    Token kw = next();
    ColorClass c;
    c.name = ident("class name");
    if (g_.class_index(c.name) >= 0) fail(kw, "duplicate class '" + c.name + "'");
    c.ordered = accept("ordered");
    expect("=");
    expect("{");
    c.statics.emplace_back();
    while (!accept("}")) {
      if (accept("|")) {
        c.statics.emplace_back();
        continue;
      }
      Token t = next();
      if (!is_ident(t.text)) fail(t, "expected color, got '" + t.text + "'");
      if (std::find(c.colors.begin(), c.colors.end(), t.text) != c.colors.end())
        fail(t, "duplicate color '" + t.text + "' in class " + c.name);
      c.statics.back().push_back(c.size());
      c.static_of.push_back(static_cast<int>(c.statics.size()) - 1);
      c.colors.push_back(t.text);
    }
    if (c.colors.empty()) fail(kw, "class '" + c.name + "' has no colors");
    for (const auto& s : c.statics)
      if (s.empty()) fail(kw, "class '" + c.name + "' has an empty static subclass");
    g_.classes.push_back(std::move(c));
  }

  std::vector<int> parse_color_tuple(const Place& p, const Token& at) {
    expect("(");
    std::vector<int> tuple;
    while (!accept(")")) {
      if (accept(",")) continue;
      Token t = next();
      if (tuple.size() >= p.type.size()) fail(t, "initial token of '" + p.name + "' has too many components");
      const ColorClass& cls = g_.classes[p.type[tuple.size()]];
      auto it = std::find(cls.colors.begin(), cls.colors.end(), t.text);
      if (it == cls.colors.end()) fail(t, "'" + t.text + "' is not a color of class " + cls.name);
      tuple.push_back(static_cast<int>(it - cls.colors.begin()));
    }
    if (tuple.size() != p.type.size()) fail(at, "initial token of '" + p.name + "' has wrong arity");
    return tuple;
  }

  void parse_place() {
    Token kw = next();
    Place p;
    p.name = ident("place name");
    if (name_taken(p.name)) fail(kw, "duplicate node name '" + p.name + "'");
    Token kind = next();
    if (kind.text == "sys") {
      p.system = true;
    } else if (kind.text != "env") {
      fail(kind, "expected 'sys' or 'env'");
    }
    if (accept("bad")) {
      if (!p.system) fail(kind, "bad place '" + p.name + "' must be a system place");
      p.bad = true;
    }
    expect(":");
    expect("(");
    while (!accept(")")) {
      if (accept(",")) continue;
      Token t = next();
      int ci = g_.class_index(t.text);
      if (ci < 0) fail(t, "unknown class '" + t.text + "'");
      p.type.push_back(ci);
    }
    if (accept("init")) {
      expect("{");
      while (!accept("}")) {
        if (accept(",")) continue;
        Token at = peek();
        auto tuple = parse_color_tuple(p, at);
        if (std::find(p.init.begin(), p.init.end(), tuple) != p.init.end())
          fail(at, "place '" + p.name + "' is initially marked twice with the same color");
        p.init.push_back(std::move(tuple));
      }
    }
    g_.places.push_back(std::move(p));
  }

  int var_of(const Transition& t, const std::string& n) const {
    auto it = std::find(t.var_names.begin(), t.var_names.end(), n);
    return it == t.var_names.end() ? -1 : static_cast<int>(it - t.var_names.begin());
  }

  void parse_trans() {
    Token kw = next();
    Transition t;
    t.name = ident("transition name");
    if (name_taken(t.name)) fail(kw, "duplicate node name '" + t.name + "'");
    if (accept("vars")) {
      expect("(");
      while (!accept(")")) {
        if (accept(",")) continue;
        Token v = next();
        if (!is_ident(v.text)) fail(v, "expected variable name");
        if (v.text == "all" || v.text == "succ") fail(v, "'" + v.text + "' is reserved");
        if (var_of(t, v.text) >= 0) fail(v, "duplicate variable '" + v.text + "'");
        expect(":");
        Token c = next();
        int ci = g_.class_index(c.text);
        if (ci < 0) fail(c, "unknown class '" + c.text + "'");
        t.var_names.push_back(v.text);
        t.var_class.push_back(ci);
      }
    }
    if (accept("guard")) {
      do {
        Token a = next();
        int va = var_of(t, a.text);
        if (va < 0) fail(a, "unknown variable '" + a.text + "' in guard");
        Token op = next();
        Literal lit;
        lit.a = va;
        if (op.text == "=" || op.text == "!=") {
          lit.kind = op.text == "=" ? Literal::Eq : Literal::Neq;
          Token b = next();
          lit.b = var_of(t, b.text);
          if (lit.b < 0) fail(b, "unknown variable '" + b.text + "' in guard (color constants are not allowed)");
          if (t.var_class[lit.a] != t.var_class[lit.b]) fail(b, "guard compares variables of different classes");
        } else if (op.text == "in") {
          lit.kind = Literal::In;
          Token c = next();
          int ci = g_.class_index(c.text);
          if (ci < 0) fail(c, "unknown class '" + c.text + "'");
          if (ci != t.var_class[va]) fail(c, "membership literal names a different class than the variable's");
          expect("[");
          Token q = next();
          int qi = 0;
          try {
            qi = std::stoi(q.text);
          } catch (...) {
            fail(q, "expected static subclass number");
          }
          if (qi < 1 || qi > static_cast<int>(g_.classes[ci].statics.size()))
            fail(q, "static subclass " + q.text + " does not exist in " + c.text);
          lit.b = qi - 1;
          expect("]");
        } else {
          fail(op, "expected '=', '!=' or 'in'");
        }
        t.guard.push_back(lit);
      } while (accept("&"));
    }
    g_.transitions.push_back(std::move(t));
  }

  Term parse_term(const Transition& t, int cls, const Token& ctx) {
    Token tok = next();
    if (tok.text == "all") return Term{Term::All, -1, 0};
    if (tok.text == "succ") {
      expect("(");
      Term inner = parse_term(t, cls, ctx);
      expect(")");
      if (inner.kind == Term::All) fail(tok, "succ(all) is not allowed");
      if (!g_.classes[cls].ordered) fail(tok, "succ on unordered class " + g_.classes[cls].name);
      ++inner.depth;
      return inner;
    }
    int v = var_of(t, tok.text);
    if (v < 0) fail(tok, "unknown variable '" + tok.text + "' (color constants are not allowed)");
    if (t.var_class[v] != cls)
      fail(tok, "variable '" + tok.text + "' has class " + g_.classes[t.var_class[v]].name + ", place expects " +
                    g_.classes[cls].name);
    return Term{Term::Var, v, 0};
  }

  void parse_arc() {
    Token kw = next();
    Token a = next();
    expect("->");
    Token b = next();
    Arc arc;
    int pa = g_.place_index(a.text), ta = g_.transition_index(a.text);
    int pb = g_.place_index(b.text), tb = g_.transition_index(b.text);
    if (pa >= 0 && tb >= 0) {
      arc.place = pa;
      arc.trans = tb;
      arc.into_transition = true;
    } else if (ta >= 0 && pb >= 0) {
      arc.place = pb;
      arc.trans = ta;
      arc.into_transition = false;
    } else {
      fail(kw, "arc must connect a declared place and a declared transition");
    }
    for (const Arc& other : g_.arcs)
      if (other.place == arc.place && other.trans == arc.trans && other.into_transition == arc.into_transition)
        fail(kw, "duplicate arc " + a.text + " -> " + b.text);
    expect(":");
    expect("{");
    const Place& p = g_.places[arc.place];
    const Transition& t = g_.transitions[arc.trans];
    while (!accept("}")) {
      if (accept(",")) continue;
      Token open = peek();
      expect("(");
      TermTuple tuple;
      while (!accept(")")) {
        if (accept(",")) continue;
        if (tuple.size() >= p.type.size()) fail(peek(), "arc tuple longer than the type of " + p.name);
        tuple.push_back(parse_term(t, p.type[tuple.size()], open));
      }
      if (tuple.size() != p.type.size()) fail(open, "arc tuple arity does not match the type of " + p.name);
      arc.tuples.push_back(std::move(tuple));
    }
    if (arc.tuples.empty()) fail(kw, "arc with empty expression");
    g_.arcs.push_back(std::move(arc));
  }
};

void append_colors(std::string& out, const SymmetricGame& g, const std::vector<int>& classes,
                   const std::vector<int>& colors) {
  if (colors.empty()) return;
  out += '.';
  if (colors.size() > 1) out += '(';
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i) out += ',';
    out += g.classes[classes[i]].colors[colors[i]];
  }
  if (colors.size() > 1) out += ')';
}

}  // namespace

bool operator==(const ColorClass& a, const ColorClass& b) {
  return a.name == b.name && a.ordered == b.ordered && a.colors == b.colors && a.statics == b.statics;
}

bool structurally_equal(const SymmetricGame& a, const SymmetricGame& b) {
  return a.name == b.name && a.classes == b.classes && a.places == b.places && a.transitions == b.transitions &&
         a.arcs == b.arcs;
}

int SymmetricGame::class_index(std::string_view n) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == n) return static_cast<int>(i);
  return -1;
}
int SymmetricGame::place_index(std::string_view n) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].name == n) return static_cast<int>(i);
  return -1;
}
int SymmetricGame::transition_index(std::string_view n) const {
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].name == n) return static_cast<int>(i);
  return -1;
}

void SymmetricGame::finalize() {
  in_arcs.assign(transitions.size(), {});
  out_arcs.assign(transitions.size(), {});
  place_out_arcs.assign(places.size(), {});
  env_preset.assign(transitions.size(), false);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.into_transition) {
      in_arcs[a.trans].push_back(static_cast<int>(i));
      place_out_arcs[a.place].push_back(static_cast<int>(i));
      if (!places[a.place].system) env_preset[a.trans] = true;
    } else {
      out_arcs[a.trans].push_back(static_cast<int>(i));
    }
  }
}

SymmetricGame parse_game(std::string_view text) { return Parser(text).run(); }

std::string print_game(const SymmetricGame& g) {
  std::ostringstream o;
  o << "game " << (g.name.empty() ? "unnamed" : g.name) << "\n";
  for (const ColorClass& c : g.classes) {
    o << "class " << c.name << (c.ordered ? " ordered" : "") << " = {";
    for (std::size_t q = 0; q < c.statics.size(); ++q) {
      if (q) o << " |";
      for (int col : c.statics[q]) o << ' ' << c.colors[col];
    }
    o << " }\n";
  }
  for (const Place& p : g.places) {
    o << "place " << p.name << (p.system ? " sys" : " env") << (p.bad ? " bad" : "") << " : (";
    for (int ci : p.type) o << ' ' << g.classes[ci].name;
    o << " )";
    if (!p.init.empty()) {
      o << " init {";
      for (const auto& tup : p.init) {
        o << " (";
        for (std::size_t k = 0; k < tup.size(); ++k) o << ' ' << g.classes[p.type[k]].colors[tup[k]];
        o << " )";
      }
      o << " }";
    }
    o << "\n";
  }
  for (const Transition& t : g.transitions) {
    o << "trans " << t.name << " vars (";
    for (std::size_t v = 0; v < t.var_names.size(); ++v)
      o << ' ' << t.var_names[v] << ':' << g.classes[t.var_class[v]].name;
    o << " )";
    for (std::size_t l = 0; l < t.guard.size(); ++l) {
      const Literal& lit = t.guard[l];
      o << (l ? " & " : " guard ") << t.var_names[lit.a];
      if (lit.kind == Literal::In)
        o << " in " << g.classes[t.var_class[lit.a]].name << '[' << lit.b + 1 << ']';
      else
        o << (lit.kind == Literal::Eq ? " = " : " != ") << t.var_names[lit.b];
    }
    o << "\n";
  }
  for (const Arc& a : g.arcs) {
    const Transition& t = g.transitions[a.trans];
    const std::string& pn = g.places[a.place].name;
    o << "arc " << (a.into_transition ? pn : t.name) << " -> " << (a.into_transition ? t.name : pn) << " : {";
    for (const TermTuple& tup : a.tuples) {
      o << " (";
      for (const Term& term : tup) {
        o << ' ';
        if (term.kind == Term::All) {
          o << "all";
          continue;
        }
        for (int d = 0; d < term.depth; ++d) o << "succ(";
        o << t.var_names[term.var];
        for (int d = 0; d < term.depth; ++d) o << ')';
      }
      o << " )";
    }
    o << " }\n";
  }
  return o.str();
}

bool eval_guard(const SymmetricGame& g, int t, const std::vector<int>& mode) {
  const Transition& tr = g.transitions[t];
  for (const Literal& lit : tr.guard) {
    switch (lit.kind) {
      case Literal::Eq:
        if (mode[lit.a] != mode[lit.b]) return false;
        break;
      case Literal::Neq:
        if (mode[lit.a] == mode[lit.b]) return false;
        break;
      case Literal::In:
        if (g.classes[tr.var_class[lit.a]].static_of[mode[lit.a]] != lit.b) return false;
        break;
    }
  }
  return true;
}

std::vector<std::vector<int>> eval_arc(const SymmetricGame& g, const Arc& a, const std::vector<int>& mode) {
  const Place& p = g.places[a.place];
  std::vector<std::vector<int>> out;
  for (const TermTuple& tup : a.tuples) {
    std::vector<std::vector<int>> partial{{}};
    for (std::size_t k = 0; k < tup.size(); ++k) {
      const Term& term = tup[k];
      const ColorClass& cls = g.classes[p.type[k]];
      std::vector<std::vector<int>> next;
      if (term.kind == Term::All) {
        for (const auto& pre : partial)
          for (int c = 0; c < cls.size(); ++c) {
            next.push_back(pre);
            next.back().push_back(c);
          }
      } else {
        int c = cls.succ(mode[term.var], term.depth);
        for (auto pre : partial) {
          pre.push_back(c);
          next.push_back(std::move(pre));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

std::string node_name(const SymmetricGame& g, std::string_view base, const std::vector<int>& classes,
                      const std::vector<int>& colors) {
  std::string s(base);
  append_colors(s, g, classes, colors);
  return s;
}

namespace {

// Enumerate all tuples over the given classes in lexicographic color order.
template <class F>
void for_each_tuple(const SymmetricGame& g, const std::vector<int>& classes, F&& f) {
  std::vector<int> cur(classes.size(), 0);
  for (int ci : classes)
    if (g.classes[ci].size() == 0) return;
  while (true) {
    f(cur);
    int k = static_cast<int>(cur.size()) - 1;
    while (k >= 0 && ++cur[k] == g.classes[classes[k]].size()) cur[k--] = 0;
    if (k < 0) return;
  }
}

std::int64_t tuple_code(const SymmetricGame& g, const std::vector<int>& classes, const std::vector<int>& colors) {
  std::int64_t code = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) code = code * g.classes[classes[k]].size() + colors[k];
  return code;
}

}  // namespace

std::int64_t PTGame::mode_code(int hl_trans, const std::vector<int>& mode) const {
  return tuple_code(*hl, hl->transitions[hl_trans].var_class, mode);
}

int PTGame::place_id(int hl_place, const std::vector<int>& colors) const {
  return place_lookup_[place_base_[hl_place] + tuple_code(*hl, hl->places[hl_place].type, colors)];
}

int PTGame::transition_id(int hl_trans, const std::vector<int>& mode) const {
  return trans_lookup_[trans_base_[hl_trans] + mode_code(hl_trans, mode)];
}

PTGame expand(std::shared_ptr<const SymmetricGame> gp, std::size_t cap) {
  const SymmetricGame& g = *gp;
  PTGame pt;
  pt.hl = gp;

  struct RawNode {
    std::string name;
    int hl;
    std::vector<int> colors;
    std::int64_t slot;
  };
  std::vector<RawNode> places, trans;
  std::int64_t slots = 0;
  for (std::size_t p = 0; p < g.places.size(); ++p) {
    pt.place_base_.push_back(slots);
    for_each_tuple(g, g.places[p].type, [&](const std::vector<int>& c) {
      places.push_back({node_name(g, g.places[p].name, g.places[p].type, c), static_cast<int>(p), c,
                        slots + tuple_code(g, g.places[p].type, c)});
    });
    std::int64_t n = 1;
    for (int ci : g.places[p].type) n *= g.classes[ci].size();
    slots += n;
  }
  pt.place_lookup_.assign(slots, -1);

  std::int64_t tslots = 0;
  for (std::size_t t = 0; t < g.transitions.size(); ++t) {
    pt.trans_base_.push_back(tslots);
    std::int64_t n = 1;
    for (int ci : g.transitions[t].var_class) {
      n *= g.classes[ci].size();
      if (n > static_cast<std::int64_t>(cap) * 64)
        throw CapExceeded("expansion of transition '" + g.transitions[t].name + "' exceeds the transition cap");
    }
    for_each_tuple(g, g.transitions[t].var_class, [&](const std::vector<int>& v) {
      if (!eval_guard(g, static_cast<int>(t), v)) return;
      if (trans.size() >= cap) throw CapExceeded("expansion exceeds the cap of " + std::to_string(cap) + " transitions");
      trans.push_back({node_name(g, g.transitions[t].name, g.transitions[t].var_class, v), static_cast<int>(t), v,
                       tslots + tuple_code(g, g.transitions[t].var_class, v)});
    });
    tslots += n;
  }
  pt.trans_lookup_.assign(tslots, -1);

  auto by_name = [](const RawNode& a, const RawNode& b) { return a.name < b.name; };
  std::sort(places.begin(), places.end(), by_name);
  std::sort(trans.begin(), trans.end(), by_name);
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (i && places[i].name == places[i - 1].name) throw ModelError("node name clash: " + places[i].name);
    pt.place_lookup_[places[i].slot] = static_cast<int>(i);
    pt.place_name.push_back(places[i].name);
    pt.place_hl.push_back(places[i].hl);
    pt.place_colors.push_back(places[i].colors);
    pt.place_system.push_back(g.places[places[i].hl].system);
    pt.place_bad.push_back(g.places[places[i].hl].bad);
  }
  for (std::size_t i = 0; i < trans.size(); ++i) {
    pt.trans_lookup_[trans[i].slot] = static_cast<int>(i);
    pt.trans_name.push_back(trans[i].name);
    pt.trans_hl.push_back(trans[i].hl);
    pt.trans_mode.push_back(trans[i].colors);
    pt.trans_env.push_back(g.env_preset[trans[i].hl]);
  }

  pt.pre.resize(trans.size());
  pt.post.resize(trans.size());
  pt.postset.resize(places.size());
  for (std::size_t i = 0; i < trans.size(); ++i) {
    int t = trans[i].hl;
    auto collect = [&](const std::vector<int>& arc_ids, std::vector<int>& dst) {
      for (int ai : arc_ids) {
        const Arc& a = g.arcs[ai];
        for (const auto& colors : eval_arc(g, a, trans[i].colors)) dst.push_back(pt.place_id(a.place, colors));
      }
      std::sort(dst.begin(), dst.end());
      if (std::adjacent_find(dst.begin(), dst.end()) != dst.end())
        throw ModelError("transition " + trans[i].name + " has an arc weight above 1");
    };
    collect(g.in_arcs[t], pt.pre[i]);
    collect(g.out_arcs[t], pt.post[i]);
    for (int p : pt.pre[i]) pt.postset[p].push_back(static_cast<int>(i));
  }
  for (std::size_t p = 0; p < g.places.size(); ++p)
    for (const auto& c : g.places[p].init) pt.initial.push_back(pt.place_id(static_cast<int>(p), c));
  std::sort(pt.initial.begin(), pt.initial.end());
  return pt;
}

bool pt_enabled(const PTGame& pt, const Marking& m, int t) {
  return std::includes(m.begin(), m.end(), pt.pre[t].begin(), pt.pre[t].end());
}

Marking pt_fire(const PTGame& pt, const Marking& m, int t) {
  if (!pt_enabled(pt, m, t)) throw std::logic_error("firing disabled transition " + pt.trans_name[t]);
  Marking rest;
  std::set_difference(m.begin(), m.end(), pt.pre[t].begin(), pt.pre[t].end(), std::back_inserter(rest));
  Marking out;
  std::set_union(rest.begin(), rest.end(), pt.post[t].begin(), pt.post[t].end(), std::back_inserter(out));
  if (out.size() != rest.size() + pt.post[t].size())
    throw ClassViolation("unsafe marking after firing " + pt.trans_name[t]);
  return out;
}

std::string pt_to_dot(const PTGame& pt) {
  std::ostringstream o;
  o << "digraph \"" << pt.hl->name << "\" {\n";
  std::vector<bool> marked(pt.num_places(), false);
  for (int p : pt.initial) marked[p] = true;
  for (int p = 0; p < pt.num_places(); ++p) {
    o << "  p" << p << " [shape=circle, label=\"" << pt.place_name[p] << (marked[p] ? "\\n*" : "") << "\"";
    if (pt.place_bad[p]) o << ", peripheries=2";
    if (pt.place_system[p]) o << ", style=filled, fillcolor=gray";
    o << "];\n";
  }
  for (int t = 0; t < pt.num_transitions(); ++t) o << "  t" << t << " [shape=box, label=\"" << pt.trans_name[t] << "\"];\n";
  for (int t = 0; t < pt.num_transitions(); ++t) {
    for (int p : pt.pre[t]) o << "  p" << p << " -> t" << t << ";\n";
    for (int p : pt.post[t]) o << "  t" << t << " -> p" << p << ";\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace hlpg
