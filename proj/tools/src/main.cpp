#include <iostream>

#include "xrt_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return xrt::cli::run(args, std::cout, std::cerr);
}
