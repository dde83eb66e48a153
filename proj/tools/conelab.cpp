#include <iostream>
#include <string>
#include <vector>

#include "conelab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return conelab::cli::run(args, std::cout, std::cerr);
}
