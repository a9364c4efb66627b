#include <iostream>
#include <string>
#include <vector>

#include "hamcycle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hamcycle::cli_dispatch(args, std::cout, std::cerr);
}
