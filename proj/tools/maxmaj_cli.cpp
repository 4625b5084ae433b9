// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli_app.hpp"

int main(int argc, char **argv)
{
  return maxmaj::cli::Run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
