#include <iostream>
#include <string>
#include <vector>

#include "bci/cli.hpp"

int main(int argc, char** argv) {
  return bci::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
