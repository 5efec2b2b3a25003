#include <iostream>

#include "chowcalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chowcalc::run_cli(args, std::cout, std::cerr);
}
