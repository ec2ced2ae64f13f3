#include <iostream>

#include "cli.hpp"
#include "thetalab/parallel.hpp"

int main(int argc, char** argv) {
  thetalab::configure_threads_from_env();
  std::vector<std::string> args(argv + 1, argv + argc);
  return thetalab::cli::run(args, std::cout, std::cerr);
}
