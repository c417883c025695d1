#include <iostream>
#include <string>
#include <vector>

#include "pvclass_cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pvclass::cli::run(args, std::cout, std::cerr);
}
