#include <iostream>
#include <string>
#include <vector>

#include "tabstruct/cli.hpp"

int main(int argc, char** argv) {
  return tabstruct::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
