#include <iostream>
#include <string>
#include <vector>

#include "crsurg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crsurg::cli::dispatch(std::move(args), std::cout);
}
