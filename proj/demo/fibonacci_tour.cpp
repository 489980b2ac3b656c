// Walks through the small Fibonacci examples: factors of length 4, two
// cyclic groups acting on them, a complexity table under the cycles built
// from interval exchanges, and a Christoffel array.

#include "gcx/complexity.hpp"
#include "gcx/construct.hpp"
#include "gcx/io.hpp"

#include <iostream>

int main()
{
  auto fib = gcx::WordSource::fibonacci();
  std::cout << "prefix " << fib.prefix(21) << "\n";

  auto fs = gcx::factors(fib, 4);
  std::cout << "Fact(4):";
  for (auto const &u : fs.members)
    std::cout << ' ' << u;
  std::cout << "\n";

  for (auto spec : {"(1,2,3,4)", "(1,3,2,4)"}) {
    gcx::PermGroup g(4, {gcx::parse_cycles(spec, 4)});
    auto orbits = gcx::orbit_classes(fs, g);
    std::cout << spec << ": " << orbits.count() << " classes,"
              << (gcx::is_abelian_transitive(fs, g) ? "" : " not")
              << " Abelian transitive\n";
  }

  gcx::GroupSequence cycles = [&](std::size_t n) {
    auto sigma = gcx::sturmian_cycle(fib, n);
    return gcx::PermGroup(n, {sigma});
  };
  std::cout << "\n" << gcx::render_text(gcx::complexity_table(fib, cycles, 1, 12));

  std::cout << "\nChristoffel array of 010010\n"
            << gcx::render(gcx::christoffel_array("010010"));
}
