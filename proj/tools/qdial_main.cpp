#include <iostream>

#include "qd/cli.hpp"

int main(int argc, char** argv) {
  return qd::run_cli(argc, argv, std::cout, std::cerr);
}
