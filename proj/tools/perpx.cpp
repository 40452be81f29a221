#include <iostream>
#include <string>
#include <vector>

#include "perpx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return perpx::run(args, std::cout, std::cerr);
}
