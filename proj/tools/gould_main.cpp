#include <iostream>
#include <string>
#include <vector>

#include "gould/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gould::run_command(args, std::cout, std::cerr);
}
