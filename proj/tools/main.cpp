#include <iostream>

#include "triwf/cli.hpp"

int main(int argc, char** argv) {
  return triwf::cli::run(argc, argv, std::cout, std::cerr);
}
