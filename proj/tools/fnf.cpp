#include <iostream>
#include <string>
#include <vector>

#include "fnf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fnf::run_cli(args, std::cout, std::cerr);
}
