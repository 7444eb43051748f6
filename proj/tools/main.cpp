#include "genopt/bench_io.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return genopt::run_cli(args, std::cout, std::cerr);
}
