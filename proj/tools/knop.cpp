#include <iostream>

#include "knop/cli.hpp"

int main(int argc, char** argv) {
  return knop::cli::run(argc, argv, std::cout, std::cerr);
}
