#include <iostream>
#include <string>
#include <vector>

#include "freeprod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return freeprod::cli::run(args, std::cout, std::cerr);
}
