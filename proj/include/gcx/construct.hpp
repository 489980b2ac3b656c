#ifndef GCX_CONSTRUCT_HPP
#define GCX_CONSTRUCT_HPP

// Witness groups for Sturmian words: abc-cycles that identify each Abelian
// class of Fact(m), Christoffel arrays, interval-partition products of such
// cycles, and an exhaustive scan over the conjugates of a small group.

#include "gcx/complexity.hpp"
#include "gcx/errors.hpp"
#include "gcx/perm.hpp"
#include "gcx/words.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace gcx {

/// The unique y in 1..M-1 with x*y = 1 (mod M).
inline std::size_t modular_inverse(long long x, long long modulus)
{
  if (modulus < 2)
    throw input_error("modular_inverse: modulus must be >= 2");
  long long a = ((x % modulus) + modulus) % modulus;
  // extended Euclid on (a, modulus)
  long long old_r = a, r = modulus, old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1)
    throw input_error("modular_inverse: " + std::to_string(x) +
                      " is not invertible modulo " + std::to_string(modulus));
  return static_cast<std::size_t>(((old_s % modulus) + modulus) % modulus);
}

/// Interval-exchange data for one length m of a Sturmian word.
///
/// w_prev and w are consecutive bispecial factors with
/// |w_prev| + 2 < m <= |w| + 2; r and s count the ones and zeros of 0w1;
/// p and q are the inverses of r and s modulo r + s (the coprime periods
/// of w); the interval lengths are a = m - p, b = p + q - m, c = m - q.
struct FineWilfData {
  std::size_t m = 0;
  Word w;
  Word w_prev;
  std::size_t r = 0, s = 0;
  std::size_t p = 0, q = 0;
  std::size_t a = 0, b = 0, c = 0;

  friend bool operator==(FineWilfData const &, FineWilfData const &) = default;
};

inline FineWilfData fine_wilf_data(WordSource const &source, std::size_t m)
{
  if (m < 4)
    throw input_error("fine_wilf_data: m must be >= 4");
  if (!source.is_sturmian())
    throw input_error("fine_wilf_data: " + source.name() +
                      " is not a Sturmian source");

  // Consecutive central words satisfy |w| + 2 <= 2 (|w_prev| + 2) < 2m.
  auto ladder = bispecial_ladder(source, 2 * m);
  auto it = std::find_if(ladder.begin(), ladder.end(),
                         [m](Word const &w) { return w.size() + 2 >= m; });
  if (it == ladder.end() || it == ladder.begin())
    throw internal_fault("bispecial ladder of " + source.name() +
                         " exhausted before length " + std::to_string(m));

  FineWilfData d;
  d.m = m;
  d.w = *it;
  d.w_prev = *(it - 1);
  Word christoffel = "0" + d.w + "1";
  d.r = static_cast<std::size_t>(
      std::count(christoffel.begin(), christoffel.end(), '1'));
  d.s = christoffel.size() - d.r;
  std::size_t total = d.r + d.s;
  d.p = modular_inverse(static_cast<long long>(d.r), static_cast<long long>(total));
  d.q = modular_inverse(static_cast<long long>(d.s), static_cast<long long>(total));

  auto fault = [&](char const *what) {
    throw internal_fault(std::string("fine_wilf_data(") + source.name() +
                         ", m=" + std::to_string(m) + "): " + what);
  };
  if (std::max(d.p, d.q) != d.w_prev.size() + 2)
    fault("max{p,q} differs from |w_prev| + 2");
  if (d.w_prev.size() + 2 >= m)
    fault("w_prev is not below m");
  if (d.p > m || d.q > m || d.p + d.q < m)
    fault("interval lengths out of range");
  d.a = m - d.p;
  d.b = d.p + d.q - m;
  d.c = m - d.q;
  if (d.a == 0 || d.c == 0)
    fault("a or c vanished");
  if (std::gcd(d.a + d.b, d.b + d.c) != 1)
    fault("gcd(a+b, b+c) != 1");
  return d;
}

/// An m-cycle sigma, a discrete 3-interval exchange, such that <sigma>
/// identifies exactly the Abelian-equivalent factors of length m. The
/// result is checked before it is returned.
inline Permutation sturmian_cycle(WordSource const &source, std::size_t m)
{
  if (m == 0)
    throw input_error("sturmian_cycle: m must be positive");
  if (!source.is_sturmian())
    throw input_error("sturmian_cycle: " + source.name() +
                      " is not a Sturmian source");
  Permutation sigma;
  if (m <= 3) {
    std::vector<Point> cycle(m);
    std::iota(cycle.begin(), cycle.end(), Point{1});
    sigma = Permutation::from_cycles({cycle}, m);
  } else {
    auto d = fine_wilf_data(source, m);
    sigma = abc_permutation(d.a, d.b, d.c);
  }
  if (!is_n_cycle(sigma))
    throw internal_fault("sturmian_cycle: " + to_string(sigma) +
                         " is not an m-cycle");
  if (!is_abelian_transitive(factors(source, m), PermGroup(m, {sigma})))
    throw internal_fault("sturmian_cycle: <" + to_string(sigma) +
                         "> is not Abelian transitive on Fact(" +
                         std::to_string(m) + ")");
  return sigma;
}

//------------------------------------------------------------------------------
// Christoffel arrays
//------------------------------------------------------------------------------

/// The cyclic conjugates of 0w1 in increasing lexicographic order. For
/// w = 010010 this is the 8x8 array with r = 3 ones and s = 5 zeros per row.
struct ChristoffelArray {
  Word central;
  std::size_t r = 0;
  std::size_t s = 0;
  std::vector<Word> rows;

  friend bool operator==(ChristoffelArray const &,
                         ChristoffelArray const &) = default;
};

inline ChristoffelArray christoffel_array(std::string_view central)
{
  for (char ch : central)
    if (ch != '0' && ch != '1')
      throw input_error("christoffel_array: '" + std::string(central) +
                        "' is not a binary word");
  Word base = "0" + std::string(central) + "1";
  ChristoffelArray arr;
  arr.central = std::string(central);
  arr.r = static_cast<std::size_t>(std::count(base.begin(), base.end(), '1'));
  arr.s = base.size() - arr.r;
  for (std::size_t i = 0; i < base.size(); ++i)
    arr.rows.push_back(base.substr(i) + base.substr(0, i));
  std::sort(arr.rows.begin(), arr.rows.end());
  if (std::adjacent_find(arr.rows.begin(), arr.rows.end()) != arr.rows.end())
    throw input_error("christoffel_array: 0" + std::string(central) +
                      "1 is not primitive");
  return arr;
}

/// Rows as space-separated digits, one row per line.
inline std::string render(ChristoffelArray const &arr)
{
  std::string out;
  for (auto const &row : arr.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        out += ' ';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

//------------------------------------------------------------------------------
// Witness constructions
//------------------------------------------------------------------------------

/// Record of one witness construction on Fact_x(n).
struct WitnessReport {
  std::string word;
  std::size_t n = 0;
  /// The requested group: an Abelian spec such as "Z2xZ3", or the cycle
  /// type of the requested permutation.
  std::string input_spec;
  /// Block sizes after padding with trivial factors.
  std::vector<std::size_t> block_sizes;
  BlockPartition blocks;
  /// One cycle per block, supported on that block.
  std::vector<Permutation> cycles;
  PermGroup group;
  std::size_t epsilon = 0;
  std::size_t class_count = 0;
  bool passed = false;

  friend bool operator==(WitnessReport const &, WitnessReport const &) = default;
};

namespace detail {

/// Moves a permutation of {1..m} onto the interval starting after
/// `offset`, inside S_n.
inline Permutation shift_into(Permutation const &sigma, std::size_t offset,
                              std::size_t n)
{
  Permutation out = Permutation::identity(n);
  std::vector<Point> images = out.images();
  for (Point j = 1; j <= sigma.degree(); ++j)
    images[offset + j - 1] = static_cast<Point>(offset + sigma(j));
  return Permutation::from_images(std::move(images));
}

/// Block cycles for an interval partition with the given sizes.
inline std::vector<Permutation> block_cycles(WordSource const &source,
                                             std::vector<std::size_t> const &sizes,
                                             std::size_t n)
{
  std::vector<Permutation> cycles;
  std::size_t offset = 0;
  for (std::size_t m : sizes) {
    cycles.push_back(shift_into(sturmian_cycle(source, m), offset, n));
    offset += m;
  }
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j)
      if (compose(cycles[i], cycles[j]) != compose(cycles[j], cycles[i]))
        throw internal_fault("block cycles do not commute");
  return cycles;
}

inline void require_sturmian(WordSource const &source, char const *what)
{
  if (!source.is_sturmian())
    throw input_error(std::string(what) + ": " + source.name() +
                      " is not a Sturmian source");
}

} // namespace detail

/// A subgroup G' of S_n isomorphic to the Abelian group `spec` with
/// exactly epsilon(G') + 1 classes on Fact(n). The spec is padded with
/// trivial factors up to trace n; the padding goes after the given moduli.
inline WitnessReport build_isomorphic_witness(WordSource const &source,
                                              std::size_t n,
                                              AbelianSpec const &spec)
{
  detail::require_sturmian(source, "build_isomorphic_witness");
  if (n == 0)
    throw input_error("build_isomorphic_witness: n must be positive");
  if (spec.trace() > n)
    throw input_error("Abelian spec " + spec.to_string() + " has trace " +
                      std::to_string(spec.trace()) + " > n = " +
                      std::to_string(n) + "; it does not embed in S_" +
                      std::to_string(n));

  WitnessReport report;
  report.word = source.name();
  report.n = n;
  report.input_spec = spec.to_string();
  report.block_sizes = spec.moduli;
  report.block_sizes.resize(spec.moduli.size() + (n - spec.trace()), 1);
  report.blocks = BlockPartition::intervals(report.block_sizes);
  report.cycles = detail::block_cycles(source, report.block_sizes, n);

  std::vector<Permutation> gens;
  for (auto const &c : report.cycles)
    if (!c.is_identity())
      gens.push_back(c);
  report.group = PermGroup(n, std::move(gens));

  for (std::size_t i = 0; i < report.cycles.size(); ++i)
    if (order(report.cycles[i]) != report.block_sizes[i])
      throw internal_fault("block cycle order differs from its modulus");
  report.epsilon = epsilon(report.group);
  if (report.epsilon != report.blocks.size())
    throw internal_fault("epsilon(G') differs from the number of blocks");
  report.class_count = orbit_classes(factors(source, n), report.group).count();
  report.passed = report.class_count == report.epsilon + 1;
  return report;
}

/// A conjugate G' = <sigma'> of <sigma> built from block cycles on an
/// interval partition whose block sizes are the cycle lengths of sigma,
/// fixed points included. sigma' is the product of the block cycles, so
/// its cycle type equals that of sigma; the equality is checked as the
/// conjugacy certificate.
///
/// Block orders are tried starting from the order of least points in
/// sigma, then the remaining distinct orders lexicographically (at most
/// `max_orders` in total). The first order reaching epsilon + 1 classes is
/// reported; if none does, the first attempt is reported with passed =
/// false. Equality is not reachable for every cycle type: when two
/// non-trivial cycle lengths share a factor, <sigma'> is a proper subgroup
/// of the group generated by the separate block cycles.
inline WitnessReport build_conjugate_witness(WordSource const &source,
                                             Permutation const &sigma,
                                             std::size_t max_orders = 5040)
{
  detail::require_sturmian(source, "build_conjugate_witness");
  std::size_t n = sigma.degree();
  if (n == 0)
    throw input_error("build_conjugate_witness: degree must be positive");

  std::vector<std::size_t> sizes;
  {
    std::vector<bool> seen(n, false);
    for (Point i = 1; i <= n; ++i) {
      if (seen[i - 1])
        continue;
      std::size_t len = 0;
      for (Point j = i; !seen[j - 1]; j = sigma(j)) {
        seen[j - 1] = true;
        ++len;
      }
      sizes.push_back(len);
    }
  }
  std::size_t g = 0;
  for (auto len : sizes)
    g = std::gcd(g, len);
  if (g != 1)
    throw input_error("build_conjugate_witness: cycle lengths of " +
                      to_string(sigma) + " have gcd " + std::to_string(g));

  auto const type = cycle_type(sigma);
  std::string type_text;
  for (std::size_t i = 0; i < type.size(); ++i)
    type_text += (i ? "," : "") + std::to_string(type[i]);
  auto const target = epsilon(PermGroup(n, {sigma}));
  auto const fs = factors(source, n);

  auto attempt = [&](std::vector<std::size_t> const &order) {
    WitnessReport report;
    report.word = source.name();
    report.n = n;
    report.input_spec = type_text;
    report.block_sizes = order;
    report.blocks = BlockPartition::intervals(order);
    report.cycles = detail::block_cycles(source, order, n);
    Permutation product = Permutation::identity(n);
    for (auto const &c : report.cycles)
      product = compose(product, c);
    if (cycle_type(product) != type)
      throw internal_fault("conjugate witness has the wrong cycle type");
    report.group = PermGroup(n, {product});
    report.epsilon = epsilon(report.group);
    if (report.epsilon != target)
      throw internal_fault("conjugate witness changes epsilon");
    report.class_count = orbit_classes(fs, report.group).count();
    report.passed = report.class_count == target + 1;
    return report;
  };

  WitnessReport first = attempt(sizes);
  if (first.passed)
    return first;
  auto order = sizes;
  std::sort(order.begin(), order.end());
  for (std::size_t tried = 1; tried < max_orders; ++tried) {
    if (order != sizes) {
      auto report = attempt(order);
      if (report.passed)
        return report;
    }
    if (!std::next_permutation(order.begin(), order.end()))
      break;
  }
  return first;
}

//------------------------------------------------------------------------------
// Conjugacy scan
//------------------------------------------------------------------------------

inline constexpr std::size_t max_scan_degree = 8;

struct ScanEntry {
  /// sigma G sigma^{-1} for the lexicographically first sigma reaching it.
  PermGroup group;
  Permutation conjugator;
  std::size_t classes = 0;
};

struct ScanResult {
  std::size_t n = 0;
  std::size_t min_classes = 0;
  std::size_t max_classes = 0;
  /// Distinct conjugates in order of discovery.
  std::vector<ScanEntry> entries;
};

namespace detail {

inline std::uint64_t factorial(std::size_t n)
{
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i)
    f *= i;
  return f;
}

/// The k-th permutation of {1..n} in lexicographic order of image lists.
inline std::vector<Point> unrank(std::uint64_t k, std::size_t n)
{
  std::vector<Point> pool(n);
  std::iota(pool.begin(), pool.end(), Point{1});
  std::vector<Point> out;
  for (std::size_t i = n; i >= 1; --i) {
    std::uint64_t f = factorial(i - 1);
    out.push_back(pool[k / f]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k / f));
    k %= f;
  }
  return out;
}

} // namespace detail

/// Class counts on Fact(n) over every distinct conjugate of G in S_n.
/// Conjugates are identified by their sorted element lists. Work is split
/// across threads by ranges of conjugators and merged in rank order.
inline ScanResult conjugacy_scan(WordSource const &source,
                                 PermGroup const &group,
                                 std::size_t work_budget = 200'000'000)
{
  std::size_t n = group.degree();
  if (n < 1 || n > max_scan_degree)
    throw input_error("conjugacy_scan: n = " + std::to_string(n) +
                      " outside 1.." + std::to_string(max_scan_degree));
  auto fs = factors(source, n);
  auto const &elements = group.elements();
  std::uint64_t total = detail::factorial(n);

  ScanResult result;
  result.n = n;
  if (elements.size() == total) {
    // normal subgroup of itself: S_n has a single conjugate
    result.entries.push_back(
        {group, Permutation::identity(n), orbit_classes(fs, group).count()});
    result.min_classes = result.max_classes = result.entries[0].classes;
    return result;
  }
  if (total * elements.size() > work_budget)
    throw input_error("conjugacy_scan: " + std::to_string(total) + " x " +
                      std::to_string(elements.size()) +
                      " exceeds the work budget");

  using Fingerprint = std::vector<Permutation>;
  struct Found {
    Fingerprint key;
    ScanEntry entry;
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
  std::vector<std::vector<Found>> partial(workers);
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  for (unsigned t = 0; t < workers; ++t) {
    std::uint64_t begin = total * t / workers;
    std::uint64_t end = total * (t + 1) / workers;
    threads.emplace_back([&, t, begin, end] {
      try {
        std::set<Fingerprint> local;
        auto images = detail::unrank(begin, n);
        for (std::uint64_t k = begin; k < end; ++k) {
          auto sigma = Permutation::from_images(images);
          auto sigma_inv = inverse(sigma);
          Fingerprint key;
          key.reserve(elements.size());
          for (auto const &g : elements)
            key.push_back(compose(sigma, compose(g, sigma_inv)));
          std::sort(key.begin(), key.end());
          if (local.insert(key).second) {
            auto conj = conjugate(group, sigma);
            auto classes = orbit_classes(fs, conj).count();
            partial[t].push_back({key, {conj, sigma, classes}});
          }
          std::next_permutation(images.begin(), images.end());
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    });
  }
  for (auto &th : threads)
    th.join();
  if (failure)
    std::rethrow_exception(failure);

  std::set<Fingerprint> seen;
  for (auto &chunk : partial)
    for (auto &f : chunk)
      if (seen.insert(f.key).second)
        result.entries.push_back(std::move(f.entry));

  result.min_classes = result.max_classes = result.entries.front().classes;
  for (auto const &e : result.entries) {
    result.min_classes = std::min(result.min_classes, e.classes);
    result.max_classes = std::max(result.max_classes, e.classes);
  }
  return result;
}

} // namespace gcx

#endif // GCX_CONSTRUCT_HPP
