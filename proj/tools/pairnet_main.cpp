#include <iostream>
#include <string>
#include <vector>

#include "pairnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pairnet::cli::run(args, std::cout, std::cerr);
}
