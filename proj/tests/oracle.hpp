#ifndef GCX_TESTS_ORACLE_HPP
#define GCX_TESTS_ORACLE_HPP

// Brute-force reference computations for the test suites. Nothing here
// calls into the library: permutations are plain image vectors, words are
// read off mechanical (floor-difference) sequences, and orbits come from
// applying every element of an explicitly closed group.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Seed for randomized suites; set by --seed=N on the test command line.
std::uint64_t seed();

inline std::mt19937_64 rng(std::uint64_t salt = 0)
{
  return std::mt19937_64(seed() * 0x9e3779b97f4a7c15ULL + salt);
}

using Perm = std::vector<int>; // 1-based images, Perm[i-1] = g(i)

inline Perm identity(int n)
{
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

/// (g h)(i) = g(h(i))
inline Perm mul(Perm const &g, Perm const &h)
{
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = g[h[i] - 1];
  return out;
}

inline Perm inv(Perm const &g)
{
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[g[i] - 1] = static_cast<int>(i) + 1;
  return out;
}

inline Perm from_cycles(std::vector<std::vector<int>> const &cycles, int n)
{
  Perm p = identity(n);
  for (auto const &c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i)
      p[c[i] - 1] = c[(i + 1) % c.size()];
  return p;
}

/// Every element of <gens>, by saturation under right multiplication.
inline std::set<Perm> closure(std::vector<Perm> const &gens, int n)
{
  std::set<Perm> seen{identity(n)};
  std::vector<Perm> frontier{identity(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (auto const &x : frontier)
      for (auto const &g : gens) {
        Perm y = mul(x, g);
        if (seen.insert(y).second)
          next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

/// (g * u)(i) = u(g^{-1}(i)), i.e. the letter at i moves to g(i).
inline std::string act(Perm const &g, std::string const &u)
{
  std::string v(u.size(), '?');
  for (std::size_t i = 0; i < u.size(); ++i)
    v[g[i] - 1] = u[i];
  return v;
}

/// Number of point orbits, by iterating all elements.
inline int point_orbit_count(std::set<Perm> const &group, int n)
{
  std::vector<int> label(n + 1, 0);
  int count = 0;
  for (int i = 1; i <= n; ++i) {
    if (label[i])
      continue;
    ++count;
    for (auto const &g : group)
      label[g[i - 1]] = count;
  }
  return count;
}

/// Orbit classes of `words` under the full element list: each class is
/// { g * u : g in G } intersected with the set.
inline std::vector<std::set<std::string>>
orbit_classes(std::set<Perm> const &group, std::set<std::string> const &words)
{
  std::vector<std::set<std::string>> out;
  std::set<std::string> done;
  for (auto const &u : words) {
    if (done.count(u))
      continue;
    std::set<std::string> cls;
    for (auto const &g : group) {
      auto v = act(g, u);
      if (words.count(v))
        cls.insert(v);
    }
    done.insert(cls.begin(), cls.end());
    out.push_back(cls);
  }
  return out;
}

inline std::map<char, int> parikh(std::string const &u)
{
  std::map<char, int> m;
  for (char c : u)
    ++m[c];
  return m;
}

inline std::size_t parikh_class_count(std::set<std::string> const &words)
{
  std::set<std::map<char, int>> keys;
  for (auto const &w : words)
    keys.insert(parikh(w));
  return keys.size();
}

/// Characteristic Sturmian word c(n) = floor((n+1) a) - floor(n a), n >= 1,
/// for a = [0; d1+1, d2, d3, ...], evaluated exactly at a deep convergent.
/// `digits(k)` gives d_k for k >= 1.
template <class Digits>
std::string mechanical_prefix(Digits digits, std::size_t length)
{
  // Convergents of [0; a1, a2, ...] with a1 = d1 + 1.
  __int128 p0 = 0, q0 = 1, p1 = 1, q1 = digits(1) + 1;
  for (std::size_t k = 2; q1 < (__int128)1 << 80; ++k) {
    __int128 a = digits(k);
    __int128 p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
  }
  std::string out;
  for (std::size_t n = 1; n <= length; ++n) {
    __int128 hi = (__int128)(n + 1) * p1 / q1;
    __int128 lo = (__int128)n * p1 / q1;
    out += static_cast<char>('0' + (int)(hi - lo));
  }
  return out;
}

inline std::set<std::string> windows(std::string const &w, std::size_t n)
{
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i)
    out.insert(w.substr(i, n));
  return out;
}

/// Thue-Morse letter t(i) = parity of the binary digit sum of i.
inline std::string thue_morse_prefix(std::size_t length)
{
  std::string out;
  for (std::size_t i = 0; i < length; ++i)
    out += static_cast<char>('0' + (__builtin_popcountll(i) & 1));
  return out;
}

/// A random set of generators of S_n, each a uniformly random permutation
/// or, with probability 1/2, a random transposition / short cycle.
inline std::vector<Perm> random_generators(std::mt19937_64 &g, int n,
                                           int max_gens = 3)
{
  std::uniform_int_distribution<int> count(1, max_gens);
  std::vector<Perm> gens;
  int k = count(g);
  for (int j = 0; j < k; ++j) {
    Perm p = identity(n);
    if (g() % 2) {
      std::shuffle(p.begin(), p.end(), g);
    } else {
      int len = 2 + static_cast<int>(g() % std::min(3, std::max(1, n - 1)));
      len = std::min(len, n);
      std::vector<int> pts(n);
      std::iota(pts.begin(), pts.end(), 1);
      std::shuffle(pts.begin(), pts.end(), g);
      pts.resize(len);
      p = from_cycles({pts}, n);
    }
    gens.push_back(p);
  }
  return gens;
}

inline std::string cycles_text(Perm const &p)
{
  std::string out;
  std::vector<bool> seen(p.size() + 1, false);
  for (int i = 1; i <= (int)p.size(); ++i) {
    if (seen[i] || p[i - 1] == i)
      continue;
    out += "(";
    for (int j = i; !seen[j]; j = p[j - 1]) {
      seen[j] = true;
      out += (j == i ? "" : ",") + std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

} // namespace oracle

#endif // GCX_TESTS_ORACLE_HPP
