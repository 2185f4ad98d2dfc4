#include <iostream>
#include <string>
#include <vector>

#include "syzygy/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return syzygy::cli::run(args, std::cout, std::cerr);
}
