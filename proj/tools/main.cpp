#include <iostream>

#include "doa_cli.hpp"

int main(int argc, char** argv) {
  return doa::cli::run(std::vector<std::string>(argv, argv + argc), std::cout,
                       std::cerr);
}
