#include <iostream>

#include "polyq_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polyq::cli::dispatch(args, std::cout, std::cerr);
}
