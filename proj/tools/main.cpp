#include <iostream>

#include "hlpg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hlpg::run_cli(args, std::cout, std::cerr);
}
