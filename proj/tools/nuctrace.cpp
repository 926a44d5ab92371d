#include <iostream>

#include "nuctrace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nuctrace::cli::run(args, std::cout, std::cerr);
}
