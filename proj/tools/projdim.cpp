#include <iostream>
#include <string>
#include <vector>

#include "projdim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return projdim::run(args, std::cout, std::cerr);
}
