#include <iostream>
#include <string>
#include <vector>

#include "hill/cli.hpp"

int main(int argc, char** argv) {
  return hill::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
