#include <iostream>
#include <string>
#include <vector>

#include "modcoh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modcoh::cli::run(std::move(args), std::cout, std::cerr);
}
