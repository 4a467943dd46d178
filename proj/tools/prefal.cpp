#include <iostream>
#include <vector>

#include "prefal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prefal::run_cli(args, std::cout, std::cerr);
}
