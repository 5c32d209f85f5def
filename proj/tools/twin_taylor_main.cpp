#include <iostream>

#include "twin_taylor/cli.hpp"

int main(int argc, char** argv) {
  return twin_taylor::run_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
