#include <iostream>
#include <string>
#include <vector>

#include "ocix/service/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return ocix::service::cli_run(args, std::cout, std::cerr);
}
