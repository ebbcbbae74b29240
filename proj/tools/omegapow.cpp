#include <iostream>

#include "omegapow/cli.hpp"

int main(int argc, char** argv) {
  return omegapow::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
