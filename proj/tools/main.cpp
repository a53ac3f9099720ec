#include <iostream>

#include "photonmix/cli.hpp"

int main(int argc, char** argv) {
  return photonmix::cli::main(argc, argv, std::cout, std::cerr);
}
