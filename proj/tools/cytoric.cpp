#include "cytoric/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return cytoric::cli::run(argc, argv, std::cout, std::cerr);
}
