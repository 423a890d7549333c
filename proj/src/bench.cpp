#include "hlpg/bench.hpp"

#include <sstream>
#include <stdexcept>

namespace hlpg {

namespace {

std::string colors(const char* prefix, int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += std::string(" ") + prefix + std::to_string(i);
  return s;
}

std::string tokens(const char* prefix, int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += std::string(" ( ") + prefix + std::to_string(i) + " )";
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string BenchSpec::instance() const {
  if (family == "cm") return "CM(" + std::to_string(m) + "," + std::to_string(o) + ")";
  std::string f = family == "cs" ? "CS" : family == "dw" ? "DW" : family;
  return f + "(" + std::to_string(n) + ")";
}

// Client/server: the environment hands a request to one computer (d); informing the others (inf)
// lets every computer connect to it (a); connecting before inf risks the bad place B via b.
std::string cs_source(int n) {
  require(n >= 1, "cs needs n >= 1");
  std::ostringstream o;
  o << "game CS_" << n << "\n"
    << "class C1 = {" << colors("c", n) << " }\n"
    << "class C2 = { dot }\n"
    << "place Env env : ( C2 ) init { ( dot ) }\n"
    << "place Sys sys : ( C1 ) init {" << tokens("c", n) << " }\n"
    << "place I env : ( C1 )\n"
    << "place R env : ( C1 )\n"
    << "place A sys : ( C1 C1 )\n"
    << "place B sys bad : ( C1 )\n"
    << "place H env : ( C1 )\n"
    << "trans d vars ( x:C1 )\n"
    << "trans inf vars ( x:C1 )\n"
    << "trans a vars ( y:C1 x:C1 )\n"
    << "trans b vars ( y:C1 x:C1 )\n"
    << "trans h vars ( x:C1 )\n"
    << "arc Env -> d : { ( all ) }\n"
    << "arc d -> I : { ( x ) }\n"
    << "arc I -> inf : { ( x ) }\n"
    << "arc Sys -> inf : { ( all ) }\n"
    << "arc inf -> Sys : { ( all ) }\n"
    << "arc inf -> R : { ( x ) }\n"
    << "arc Sys -> a : { ( y ) }\n"
    << "arc a -> A : { ( y x ) }\n"
    << "arc A -> b : { ( y x ) }\n"
    << "arc b -> B : { ( y ) }\n"
    << "arc R -> h : { ( x ) }\n"
    << "arc A -> h : { ( all x ) }\n"
    << "arc h -> H : { ( x ) }\n";
  return o.str();
}

// Document workflow: the environment hands a good or a bad document to some clerk; each clerk in
// turn endorses good documents and rejects bad ones, then passes the document to its successor.
std::string dw_source(int n) {
  require(n >= 1, "dw needs n >= 1");
  std::ostringstream o;
  o << "game DW_" << n << "\n"
    << "class K ordered = {" << colors("k", n) << " }\n"
    << "place Env env : ( ) init { ( ) }\n"
    << "place G env : ( K )\n"
    << "place N env : ( K )\n"
    << "place Clerk sys : ( K ) init {" << tokens("k", n) << " }\n"
    << "place Done sys : ( K )\n"
    << "place Bad sys bad : ( )\n"
    << "trans good vars ( x:K )\n"
    << "trans nogood vars ( x:K )\n"
    << "trans endorse vars ( x:K )\n"
    << "trans reject vars ( x:K )\n"
    << "trans wrongE vars ( x:K )\n"
    << "trans wrongR vars ( x:K )\n"
    << "arc Env -> good : { ( ) }\n"
    << "arc good -> G : { ( x ) }\n"
    << "arc Env -> nogood : { ( ) }\n"
    << "arc nogood -> N : { ( x ) }\n"
    << "arc G -> endorse : { ( x ) }\n"
    << "arc Clerk -> endorse : { ( x ) }\n"
    << "arc endorse -> G : { ( succ(x) ) }\n"
    << "arc endorse -> Done : { ( x ) }\n"
    << "arc N -> reject : { ( x ) }\n"
    << "arc Clerk -> reject : { ( x ) }\n"
    << "arc reject -> N : { ( succ(x) ) }\n"
    << "arc reject -> Done : { ( x ) }\n"
    << "arc N -> wrongE : { ( x ) }\n"
    << "arc Clerk -> wrongE : { ( x ) }\n"
    << "arc wrongE -> Bad : { ( ) }\n"
    << "arc G -> wrongR : { ( x ) }\n"
    << "arc Clerk -> wrongR : { ( x ) }\n"
    << "arc wrongR -> Bad : { ( ) }\n";
  return o.str();
}

// Concurrent machines: the environment destroys one machine and announces which; every order then
// picks a machine. Using the broken machine or sharing a machine is bad.
std::string cm_source(int machines, int orders) {
  require(machines >= 1 && orders >= 1, "cm needs m >= 1 and o >= 1");
  std::ostringstream o;
  o << "game CM_" << machines << "_" << orders << "\n"
    << "class M = {" << colors("m", machines) << " }\n"
    << "class O = {" << colors("o", orders) << " }\n"
    << "place Env env : ( ) init { ( ) }\n"
    << "place K env : ( M )\n"
    << "place Br env : ( M )\n"
    << "place Ord sys : ( O ) init {" << tokens("o", orders) << " }\n"
    << "place Rdy sys : ( O )\n"
    << "place Do sys : ( O M )\n"
    << "place Bad sys bad : ( )\n"
    << "trans kill vars ( x:M )\n"
    << "trans info vars ( x:M )\n"
    << "trans proc vars ( a:O x:M )\n"
    << "trans fail vars ( a:O x:M )\n"
    << "trans clash vars ( a:O b:O x:M ) guard a != b\n"
    << "arc Env -> kill : { ( ) }\n"
    << "arc kill -> K : { ( x ) }\n"
    << "arc K -> info : { ( x ) }\n"
    << "arc Ord -> info : { ( all ) }\n"
    << "arc info -> Br : { ( x ) }\n"
    << "arc info -> Rdy : { ( all ) }\n"
    << "arc Rdy -> proc : { ( a ) }\n"
    << "arc proc -> Do : { ( a x ) }\n"
    << "arc Do -> fail : { ( a x ) }\n"
    << "arc Br -> fail : { ( x ) }\n"
    << "arc fail -> Bad : { ( ) }\n"
    << "arc Do -> clash : { ( a x ) ( b x ) }\n"
    << "arc clash -> Bad : { ( ) }\n";
  return o.str();
}

std::string bench_source(const BenchSpec& s) {
  if (s.family == "cs") return cs_source(s.n);
  if (s.family == "dw") return dw_source(s.n);
  if (s.family == "cm") return cm_source(s.m, s.o);
  throw std::invalid_argument("unknown benchmark family '" + s.family + "' (expected cs, dw or cm)");
}

SymmetricGame gen_cs(int n) { return parse_game(cs_source(n)); }
SymmetricGame gen_dw(int n) { return parse_game(dw_source(n)); }
SymmetricGame gen_cm(int machines, int orders) { return parse_game(cm_source(machines, orders)); }

}  // namespace hlpg
