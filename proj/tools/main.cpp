#include <iostream>
#include <string>
#include <vector>

#include "christo/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return christo::cli::main_entry(args, std::cout, std::cerr);
}
