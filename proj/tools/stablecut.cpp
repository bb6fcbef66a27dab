#include <iostream>
#include <string>
#include <vector>

#include "stablecut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return stablecut::run_command(args, std::cout, std::cerr);
}
