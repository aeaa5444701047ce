#include <iostream>
#include <string>
#include <vector>

#include "secadv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return secadv::cli::run(args, std::cout, std::cerr);
}
