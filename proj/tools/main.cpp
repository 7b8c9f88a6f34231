#include <iostream>
#include <string>
#include <vector>

#include "fish/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fish::run(args, std::cout, std::cerr);
}
