#include <iostream>
#include <string>
#include <vector>

#include "rimap/cli.hpp"

int main(int argc, char** argv) {
  return rimap::cli::main_with_args(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
