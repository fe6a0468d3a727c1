#include <iostream>
#include <string>
#include <vector>

#include "qcvol/cli.hpp"

int main(int argc, char** argv) {
  return qcvol::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
