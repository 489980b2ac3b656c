#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <iostream>
#include <string>

namespace {
std::uint64_t the_seed = 20240611;
}

std::uint64_t oracle::seed() { return the_seed; }

int main(int argc, char **argv)
{
  ::testing::InitGoogleTest(&argc, argv);
  for (int i = 1; i < argc; ++i)
    if (std::strncmp(argv[i], "--seed=", 7) == 0)
      the_seed = std::stoull(argv[i] + 7);
  std::cout << "seed " << the_seed << "\n";
  return RUN_ALL_TESTS();
}
