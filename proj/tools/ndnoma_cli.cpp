#include <iostream>

#include "ndnoma/cli.hpp"

int main(int argc, char** argv) {
  return ndnoma::harness::cli_main(argc, argv, std::cout, std::cerr);
}
