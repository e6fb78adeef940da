/**
 * Command-line entry point. All logic lives in run_cli so that tests can
 * drive the full command surface in-process against string streams; this
 * translation unit only adapts argv and the process exit code.
 */

#include <iostream>
#include <string>
#include <vector>

#include "triwalk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return triwalk::run_cli(args, std::cout, std::cerr);
}
