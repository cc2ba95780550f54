#include <string>
#include <vector>

#include "ddh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ddh::cli::run(args);
}
