#ifndef GCX_PERM_HPP
#define GCX_PERM_HPP

// Permutations of {1..n}, finitely generated subgroups of S_n, point
// orbits, the position-permuting action on words, abc-permutations and
// abstract finite Abelian groups.

#include "gcx/errors.hpp"
#include "gcx/words.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace gcx {

/// A point of {1..n}.
using Point = std::uint32_t;

/// A bijection of {1..n}. The degree is always explicit: permutations of
/// different degrees never compare equal and are never auto-extended.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(std::size_t n)
  {
    Permutation p;
    p.images_.resize(n);
    std::iota(p.images_.begin(), p.images_.end(), Point{1});
    return p;
  }

  /// images[i-1] = sigma(i).
  static Permutation from_images(std::vector<Point> images)
  {
    std::vector<bool> hit(images.size(), false);
    for (Point v : images) {
      if (v < 1 || v > images.size() || hit[v - 1])
        throw input_error("from_images: not a bijection of {1.." +
                          std::to_string(images.size()) + "}");
      hit[v - 1] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Disjoint cycles; unmentioned points are fixed.
  static Permutation from_cycles(std::vector<std::vector<Point>> const &cycles,
                                 std::size_t n)
  {
    Permutation p = identity(n);
    std::vector<bool> used(n, false);
    for (auto const &cycle : cycles) {
      for (Point v : cycle) {
        if (v < 1 || v > n)
          throw input_error("cycle point " + std::to_string(v) +
                            " exceeds degree " + std::to_string(n));
        if (used[v - 1])
          throw input_error("cycle point " + std::to_string(v) +
                            " is repeated");
        used[v - 1] = true;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i)
        p.images_[cycle[i] - 1] = cycle[(i + 1) % cycle.size()];
    }
    return p;
  }

  std::size_t degree() const { return images_.size(); }

  /// sigma(i), 1-based.
  Point operator()(Point i) const { return images_[i - 1]; }

  std::vector<Point> const &images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i + 1)
        return false;
    return true;
  }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const &p) const noexcept
  {
    std::size_t h = p.degree();
    for (Point v : p.images())
      h = h * 1000003u ^ v;
    return h;
  }
};

namespace detail {

inline void require_same_degree(std::size_t a, std::size_t b, char const *what)
{
  if (a != b)
    throw input_error(std::string(what) + ": degree mismatch (" +
                      std::to_string(a) + " vs " + std::to_string(b) + ")");
}

} // namespace detail

/// (g o h)(i) = g(h(i)).
inline Permutation compose(Permutation const &g, Permutation const &h)
{
  detail::require_same_degree(g.degree(), h.degree(), "compose");
  std::vector<Point> images(g.degree());
  for (Point i = 1; i <= g.degree(); ++i)
    images[i - 1] = g(h(i));
  return Permutation::from_images(std::move(images));
}

inline Permutation inverse(Permutation const &g)
{
  std::vector<Point> images(g.degree());
  for (Point i = 1; i <= g.degree(); ++i)
    images[g(i) - 1] = i;
  return Permutation::from_images(std::move(images));
}

/// Non-trivial disjoint cycles, each starting at its least point, sorted
/// by least point.
inline std::vector<std::vector<Point>> to_cycles(Permutation const &g)
{
  std::vector<std::vector<Point>> cycles;
  std::vector<bool> seen(g.degree(), false);
  for (Point i = 1; i <= g.degree(); ++i) {
    if (seen[i - 1] || g(i) == i)
      continue;
    std::vector<Point> cycle;
    for (Point j = i; !seen[j - 1]; j = g(j)) {
      seen[j - 1] = true;
      cycle.push_back(j);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

/// Lengths of all cycles including fixed points, in decreasing order.
inline std::vector<std::size_t> cycle_type(Permutation const &g)
{
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(g.degree(), false);
  for (Point i = 1; i <= g.degree(); ++i) {
    if (seen[i - 1])
      continue;
    std::size_t len = 0;
    for (Point j = i; !seen[j - 1]; j = g(j)) {
      seen[j - 1] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

/// Order of g: the lcm of its cycle lengths.
inline std::uint64_t order(Permutation const &g)
{
  std::uint64_t o = 1;
  for (auto len : cycle_type(g))
    o = std::lcm(o, static_cast<std::uint64_t>(len));
  return o;
}

inline bool is_n_cycle(Permutation const &g)
{
  auto type = cycle_type(g);
  return type.size() == 1;
}

/// Cycle notation, "()" for the identity.
inline std::string to_string(Permutation const &g)
{
  auto cycles = to_cycles(g);
  if (cycles.empty())
    return "()";
  std::ostringstream os;
  for (auto const &cycle : cycles) {
    os << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i)
      os << (i ? "," : "") << cycle[i];
    os << ')';
  }
  return os.str();
}

/// Parses cycle notation such as "(1,2,3)(4,5,6)"; points may also be
/// separated by spaces, "(1 2 3)(4 5 6)". Without an explicit
/// degree the largest mentioned point is used. "()" and "" denote the
/// identity.
inline Permutation parse_cycles(std::string_view text,
                                std::optional<std::size_t> degree = std::nullopt)
{
  std::vector<std::vector<Point>> cycles;
  std::size_t pos = 0;
  auto fail = [&](std::string const &why) {
    throw input_error("malformed cycle notation '" + std::string(text) +
                      "': " + why);
  };
  auto skip_space = [&] {
    while (pos < text.size() && text[pos] == ' ')
      ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(')
      fail("expected '(' at offset " + std::to_string(pos));
    ++pos;
    std::vector<Point> cycle;
    skip_space();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      skip_space();
      continue;
    }
    for (;;) {
      skip_space();
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
        ++pos;
      if (start == pos)
        fail("expected a point at offset " + std::to_string(start));
      if (pos - start > 9)
        fail("point out of range");
      unsigned long v = std::stoul(std::string(text.substr(start, pos - start)));
      if (v == 0)
        fail("points are 1-based");
      cycle.push_back(static_cast<Point>(v));
      bool spaced = pos < text.size() && text[pos] == ' ';
      skip_space();
      if (pos >= text.size())
        fail("unterminated cycle");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (spaced && text[pos] >= '0' && text[pos] <= '9')
        continue;
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      fail(std::string("unexpected '") + text[pos] + "'");
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  std::size_t n = 0;
  for (auto const &cycle : cycles)
    for (Point v : cycle)
      n = std::max<std::size_t>(n, v);
  if (degree) {
    if (n > *degree)
      throw input_error("cycle point " + std::to_string(n) +
                        " exceeds degree " + std::to_string(*degree));
    n = *degree;
  }
  return Permutation::from_cycles(cycles, n);
}

//------------------------------------------------------------------------------
// Word action
//------------------------------------------------------------------------------

/// g * u : i -> u(g^{-1}(i)), i.e. the letter at position i moves to g(i).
inline Word act(Permutation const &g, std::string_view u)
{
  if (u.size() != g.degree())
    throw input_error("act: word length " + std::to_string(u.size()) +
                      " differs from degree " + std::to_string(g.degree()));
  Word out(u.size(), '\0');
  for (Point i = 1; i <= g.degree(); ++i)
    out[g(i) - 1] = u[i - 1];
  return out;
}

//------------------------------------------------------------------------------
// Groups
//------------------------------------------------------------------------------

/// Enumeration cap used when no explicit cap is given.
inline constexpr std::size_t default_closure_cap = 1'000'000;

/// Breadth-first closure of the generators, starting from the identity.
/// Elements appear in discovery order, which is deterministic.
inline std::vector<Permutation>
closure(std::vector<Permutation> const &generators, std::size_t degree,
        std::size_t cap = default_closure_cap)
{
  for (auto const &g : generators)
    detail::require_same_degree(degree, g.degree(), "closure");
  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::unordered_set<Permutation, PermutationHash> seen{elements.front()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (auto const &g : generators) {
      Permutation next = compose(g, elements[head]);
      if (seen.insert(next).second) {
        if (elements.size() == cap)
          throw group_too_large("group exceeds the enumeration cap of " +
                                std::to_string(cap) + " elements");
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

/// Subgroup of S_n given by generators. The element list is computed on
/// first request and shared between copies.
class PermGroup {
public:
  PermGroup() : PermGroup(0, {}) {}

  PermGroup(std::size_t n, std::vector<Permutation> generators,
            std::string label = {})
      : n_(n), generators_(std::move(generators)), label_(std::move(label)),
        cache_(std::make_shared<closure_cache>())
  {
    for (auto const &g : generators_)
      detail::require_same_degree(n_, g.degree(), "PermGroup");
    if (generators_.empty())
      generators_.push_back(Permutation::identity(n_));
    if (label_.empty())
      label_ = describe();
  }

  static PermGroup trivial(std::size_t n)
  {
    return PermGroup(n, {Permutation::identity(n)}, "id");
  }

  /// S_n, generated by (1,2) and (1,2,...,n).
  static PermGroup symmetric(std::size_t n)
  {
    std::vector<Permutation> gens;
    if (n >= 2) {
      gens.push_back(Permutation::from_cycles({{1, 2}}, n));
      gens.push_back(cyclic(n).generators_.front());
    }
    PermGroup g(n, std::move(gens), "sym");
    g.full_symmetric_ = true;
    return g;
  }

  /// <(1,2,...,n)>.
  static PermGroup cyclic(std::size_t n)
  {
    std::vector<Point> cycle(n);
    std::iota(cycle.begin(), cycle.end(), Point{1});
    return PermGroup(n, {Permutation::from_cycles({cycle}, n)}, "cyc");
  }

  std::size_t degree() const { return n_; }
  std::vector<Permutation> const &generators() const { return generators_; }
  std::string const &label() const { return label_; }

  /// True when the group is known by construction to be all of S_n.
  bool full_symmetric() const { return full_symmetric_; }

  /// All elements, in breadth-first discovery order. Throws
  /// group_too_large past `cap`; a failed attempt is not cached.
  std::vector<Permutation> const &elements(
      std::size_t cap = default_closure_cap) const
  {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->elements)
      cache_->elements = closure(generators_, n_, cap);
    else if (cache_->elements->size() > cap)
      throw group_too_large("group exceeds the enumeration cap of " +
                            std::to_string(cap) + " elements");
    return *cache_->elements;
  }

  std::size_t order(std::size_t cap = default_closure_cap) const
  {
    return elements(cap).size();
  }

  /// Structural equality: same degree, generators and label.
  friend bool operator==(PermGroup const &x, PermGroup const &y)
  {
    return x.n_ == y.n_ && x.generators_ == y.generators_ &&
           x.label_ == y.label_ && x.full_symmetric_ == y.full_symmetric_;
  }

  /// Generators in cycle notation joined by ';'.
  std::string describe() const
  {
    std::string out;
    for (std::size_t i = 0; i < generators_.size(); ++i)
      out += (i ? ";" : "") + to_string(generators_[i]);
    return out;
  }

private:
  struct closure_cache {
    std::mutex mutex;
    std::optional<std::vector<Permutation>> elements;
  };

  std::size_t n_;
  std::vector<Permutation> generators_;
  std::string label_;
  bool full_symmetric_ = false;
  std::shared_ptr<closure_cache> cache_;
};

/// Partition of {1..n} into orbits, blocks sorted by least point.
struct OrbitPartitionPoints {
  std::size_t n = 0;
  std::vector<std::vector<Point>> blocks;

  /// epsilon(G).
  std::size_t count() const { return blocks.size(); }
};

/// Point orbits from the generators alone (union-find, no closure).
inline OrbitPartitionPoints point_orbits(PermGroup const &group)
{
  std::size_t n = group.degree();
  std::vector<Point> parent(n + 1);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto const &g : group.generators())
    for (Point i = 1; i <= n; ++i) {
      Point a = find(i), b = find(g(i));
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  OrbitPartitionPoints out;
  out.n = n;
  std::vector<std::size_t> slot(n + 1, SIZE_MAX);
  for (Point i = 1; i <= n; ++i) {
    Point root = find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.blocks.size();
      out.blocks.emplace_back();
    }
    out.blocks[slot[root]].push_back(i);
  }
  return out;
}

inline std::size_t epsilon(PermGroup const &group)
{
  return point_orbits(group).count();
}

/// sigma G sigma^{-1}, acting on generators.
inline PermGroup conjugate(PermGroup const &group, Permutation const &sigma)
{
  detail::require_same_degree(group.degree(), sigma.degree(), "conjugate");
  Permutation sigma_inv = inverse(sigma);
  std::vector<Permutation> gens;
  for (auto const &g : group.generators())
    gens.push_back(compose(sigma, compose(g, sigma_inv)));
  return PermGroup(group.degree(), std::move(gens));
}

/// True iff all generators commute pairwise.
inline bool is_abelian(PermGroup const &group)
{
  auto const &gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (compose(gens[i], gens[j]) != compose(gens[j], gens[i]))
        return false;
  return true;
}

/// Discrete 3-interval exchange on {1..a+b+c}: the consecutive intervals
/// of lengths c, b, a are rearranged in the order a, b, c. Any of a, b, c
/// may be zero.
inline Permutation abc_permutation(std::size_t a, std::size_t b, std::size_t c)
{
  std::size_t n = a + b + c;
  if (n == 0)
    throw input_error("abc_permutation: a, b and c are all zero");
  std::vector<Point> images(n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t v;
    if (i <= c)
      v = i + a + b;
    else if (i <= c + b)
      v = i + a - c;
    else
      v = i - b - c;
    images[i - 1] = static_cast<Point>(v);
  }
  return Permutation::from_images(std::move(images));
}

//------------------------------------------------------------------------------
// Abstract finite Abelian groups
//------------------------------------------------------------------------------

/// Z/m_1 x ... x Z/m_k with every m_i a prime power or 1. Trivial factors
/// are kept so that padding stays visible.
struct AbelianSpec {
  std::vector<std::size_t> moduli;

  std::size_t trace() const
  {
    return std::accumulate(moduli.begin(), moduli.end(), std::size_t{0});
  }

  /// Group order, the product of the moduli.
  std::uint64_t order() const
  {
    std::uint64_t o = 1;
    for (auto m : moduli)
      o *= m;
    return o;
  }

  std::string to_string() const
  {
    std::string out;
    for (std::size_t i = 0; i < moduli.size(); ++i)
      out += (i ? "x" : "") + std::string("Z") + std::to_string(moduli[i]);
    return out;
  }

  friend bool operator==(AbelianSpec const &, AbelianSpec const &) = default;
};

inline bool is_prime_power(std::size_t m)
{
  if (m < 2)
    return false;
  std::size_t p = 2;
  while (p * p <= m && m % p != 0)
    ++p;
  if (m % p != 0)
    return true; // m is prime
  while (m % p == 0)
    m /= p;
  return m == 1;
}

/// Splits every composite modulus into its prime-power parts, in
/// increasing prime order; moduli equal to 1 are kept.
inline AbelianSpec normalize_spec(std::vector<std::size_t> const &moduli)
{
  AbelianSpec spec;
  for (std::size_t m : moduli) {
    if (m == 0)
      throw input_error("Abelian spec: modulus must be >= 1");
    if (m == 1) {
      spec.moduli.push_back(1);
      continue;
    }
    for (std::size_t p = 2; p * p <= m; ++p) {
      std::size_t part = 1;
      while (m % p == 0) {
        m /= p;
        part *= p;
      }
      if (part > 1)
        spec.moduli.push_back(part);
    }
    if (m > 1)
      spec.moduli.push_back(m);
  }
  return spec;
}

/// Parses "Z2xZ4xZ3" or "[2,4,3]" and normalizes.
inline AbelianSpec parse_abelian_spec(std::string const &text)
{
  std::vector<std::size_t> moduli;
  auto number = [&](std::string const &item) -> std::size_t {
    if (item.empty() ||
        item.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("malformed Abelian spec '" + text + "'");
    return std::stoul(item);
  };
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']')
      throw input_error("malformed Abelian spec '" + text + "'");
    std::istringstream is(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(is, item, ','))
      moduli.push_back(number(item));
  } else {
    if (!text.empty() && text.back() == 'x')
      throw input_error("malformed Abelian spec '" + text + "'");
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, 'x')) {
      if (item.size() < 2 || item[0] != 'Z')
        throw input_error("malformed Abelian spec '" + text + "'");
      moduli.push_back(number(item.substr(1)));
    }
  }
  if (moduli.empty())
    throw input_error("empty Abelian spec");
  return normalize_spec(moduli);
}

/// Embeds the spec into S_n as disjoint cycles of the given orders on
/// consecutive intervals. Requires trace <= n.
inline PermGroup embed(AbelianSpec const &spec, std::size_t n)
{
  if (spec.trace() > n)
    throw input_error("Abelian spec " + spec.to_string() + " has trace " +
                      std::to_string(spec.trace()) + " > " +
                      std::to_string(n) + "; it does not embed in S_" +
                      std::to_string(n));
  std::vector<Permutation> gens;
  Point next = 1;
  for (std::size_t m : spec.moduli) {
    std::vector<Point> cycle(m);
    std::iota(cycle.begin(), cycle.end(), next);
    next += static_cast<Point>(m);
    gens.push_back(Permutation::from_cycles({cycle}, n));
  }
  return PermGroup(n, std::move(gens));
}

/// Parses a group at a fixed degree: `id`, `sym`, `cyc`, `abc:a,b,c`
/// (requires a+b+c = n; spaces may replace the commas), or generators in
/// cycle notation separated by ';'.
inline PermGroup parse_group_spec(std::string const &text, std::size_t n)
{
  if (text == "id")
    return PermGroup::trivial(n);
  if (text == "sym")
    return PermGroup::symmetric(n);
  if (text == "cyc")
    return PermGroup::cyclic(n);
  if (text.rfind("abc:", 0) == 0) {
    std::string body = text.substr(4);
    std::replace(body.begin(), body.end(), ' ', ',');
    std::istringstream is(body);
    std::vector<std::size_t> parts;
    std::string item;
    while (std::getline(is, item, ',')) {
      if (item.empty() ||
          item.find_first_not_of("0123456789") != std::string::npos)
        throw input_error("malformed abc spec '" + text + "'");
      parts.push_back(std::stoul(item));
    }
    if (parts.size() != 3)
      throw input_error("abc spec needs three lengths: '" + text + "'");
    if (parts[0] + parts[1] + parts[2] != n)
      throw input_error("abc spec '" + text + "' does not have degree " +
                        std::to_string(n));
    return PermGroup(n, {abc_permutation(parts[0], parts[1], parts[2])},
                     "abc:" + body);
  }
  std::vector<Permutation> gens;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';'))
    gens.push_back(parse_cycles(item, n));
  if (gens.empty())
    throw input_error("empty group spec");
  return PermGroup(n, std::move(gens));
}

} // namespace gcx

#endif // GCX_PERM_HPP
