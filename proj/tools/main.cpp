#include <iostream>

#include "fracmean_app/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fracmean::app::run_cli(args, std::cout, std::cerr);
}
