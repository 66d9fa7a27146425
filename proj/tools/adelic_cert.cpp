#include <iostream>

#include "adelic/cli.hpp"

int main(int argc, char** argv) {
  return adelic::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
