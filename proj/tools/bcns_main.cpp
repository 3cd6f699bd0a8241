#include <iostream>
#include <string>
#include <vector>

#include "bcns/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bcns::run_cli(args, {std::cout, std::cerr});
}
