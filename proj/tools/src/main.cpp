#include <iostream>
#include <string>
#include <vector>

#include "lovewave_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lovewave::cli::run(args, std::cout, std::cerr);
}
