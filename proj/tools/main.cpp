#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  auto report = gcx::cli::run(args);
  std::cout << report.out << std::flush;
  std::cerr << report.err << std::flush;
  return report.exit_code;
}
