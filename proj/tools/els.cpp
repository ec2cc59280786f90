#include <iostream>

#include "els/cli.hpp"

int main(int argc, char** argv) {
  return els::cli::run(argc, argv, std::cout, std::cerr);
}
