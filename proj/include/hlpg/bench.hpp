#pragma once

#include <string>

#include "hlpg/model.hpp"

namespace hlpg {

struct BenchSpec {
  std::string family;  // cs, dw or cm
  int n = 0;           // cs, dw
  int m = 0, o = 0;    // cm: machines, orders

  std::string instance() const;  // e.g. CS(3), CM(2,1)
};

// Generators emit .hlpg text; the game values are obtained by parsing it back.
std::string cs_source(int n);
std::string dw_source(int n);
std::string cm_source(int machines, int orders);
std::string bench_source(const BenchSpec& spec);  // throws std::invalid_argument on bad parameters

SymmetricGame gen_cs(int n);
SymmetricGame gen_dw(int n);
SymmetricGame gen_cm(int machines, int orders);

}  // namespace hlpg
