#include <iostream>
#include <string>
#include <vector>

#include "mebkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mebkit::run_cli(args, std::cout, std::cerr);
}
