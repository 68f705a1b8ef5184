#include <iostream>
#include <string>
#include <vector>

#include "slprime/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slprime::run(args, std::cout, std::cerr);
}
