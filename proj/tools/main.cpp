#include <iostream>
#include <string>
#include <vector>

#include "cssample/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return css::dispatch(args, std::cin, std::cout, std::cerr);
}
