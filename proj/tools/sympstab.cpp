#include <iostream>

#include "sympstab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sympstab::cli::run(args, std::cout, std::cerr);
}
