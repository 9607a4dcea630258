#include <iostream>
#include <string>
#include <vector>

#include "gerry/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() == 1 && args[0] == "--stdio") return gerry::run_stdio(std::cin, std::cout);
  return gerry::run_cli(args, std::cout, std::cerr);
}
