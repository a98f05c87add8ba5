#include <iostream>

#include "synk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return synk::run(args, std::cout, std::cerr);
}
