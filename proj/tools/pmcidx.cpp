#include <iostream>
#include <string>
#include <vector>

#include "pmc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pmc::cli::run(args, std::cout, std::cerr);
}
