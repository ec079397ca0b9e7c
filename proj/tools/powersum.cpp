// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "powersum/cli.hpp"

int main(int argc, char** argv) {
  return powersum::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
