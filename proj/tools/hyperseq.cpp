#include <iostream>

#include "hyperseq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperseq::run_cli(args, std::cout, std::cerr);
}
