// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "panowarp/cli.hpp"

int main(int argc, char** argv) {
  return panowarp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
