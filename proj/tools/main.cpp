#include <iostream>

#include "ricciflow/cli.hpp"

int main(int argc, char** argv) {
  return ricciflow::cli::main_entry(argc, argv, std::cout, std::cerr);
}
