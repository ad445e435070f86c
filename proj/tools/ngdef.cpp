#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ngdef/cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env;
  if (const char* s = std::getenv("NGDEF_SEED")) env = s;
  return ngd::cli::run(args, std::cout, std::cerr, env);
}
