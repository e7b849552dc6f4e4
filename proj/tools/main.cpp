#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parikh::cli::main_with_args(std::move(args), std::cout, std::cerr);
}
