#include <iostream>
#include <string>
#include <vector>

#include "qalt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qalt::cli::run(args, std::cout, std::cerr);
}
