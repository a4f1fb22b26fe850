#include <iostream>

#include "exhom/cli.hpp"

int main(int argc, char** argv) {
  return exhom::cli::run_cli(argc, argv, std::cout, std::cerr);
}
