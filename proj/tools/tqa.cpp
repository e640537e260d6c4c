#include <iostream>
#include <string>
#include <vector>

#include "tqa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tqa::cli::execute(std::move(args), std::cout, std::cerr);
}
