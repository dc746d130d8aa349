#include <iostream>

#include "manyone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return manyone::run(args, std::cout, std::cerr);
}
