#include <iostream>
#include <string>
#include <vector>

#include "krl/frontend.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return krl::run_cli(args, std::cout, std::cerr);
}
