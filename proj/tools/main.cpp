#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "hklat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hklat::run_cli(std::move(args), std::cout, std::cerr);
}
