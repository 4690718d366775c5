// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "peppy/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return peppy::cli::run(args, std::cout, std::cerr);
}
