#include <iostream>

#include "value1/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return value1::run(args, std::cin, std::cout, std::cerr);
}
