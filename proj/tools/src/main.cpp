#include <iostream>

#include "tailpath_tools/cli.hpp"

int main(int argc, char** argv) {
  return tailpath::tools::main_entry(argc, argv, std::cout, std::cerr);
}
