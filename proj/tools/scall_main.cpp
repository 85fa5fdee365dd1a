#include <iostream>
#include <string>
#include <vector>

#include "scall/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return scall::run_cli(args, std::cout, std::cerr);
}
