#include <iostream>

#include "ssg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ssg::run(args, std::cout, std::cerr);
}
