#ifndef GCX_COMPLEXITY_HPP
#define GCX_COMPLEXITY_HPP

// Equivalence classes of factor sets under permutation groups and under
// block-Abelian relations, the complexity p_{omega,x}(n), and the harness
// checking p_{omega,x}(n) >= epsilon(G_n) + 1.

#include "gcx/errors.hpp"
#include "gcx/perm.hpp"
#include "gcx/words.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gcx {

/// A partition of words; each class is sorted and classes are ordered by
/// their least member.
using WordClasses = std::vector<std::vector<Word>>;

namespace detail {

inline WordClasses classes_by_key(std::vector<Word> const &members,
                                  std::function<std::size_t(std::size_t)> key)
{
  // members are sorted, so the first member of each class is its least one
  std::unordered_map<std::size_t, std::size_t> slot;
  WordClasses out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto [it, fresh] = slot.emplace(key(i), out.size());
    if (fresh)
      out.emplace_back();
    out[it->second].push_back(members[i]);
  }
  return out;
}

} // namespace detail

/// Fact_x(n) / ~_G.
struct OrbitPartitionWords {
  std::size_t n = 0;
  WordClasses classes;
  PermGroup group;

  std::size_t count() const { return classes.size(); }

  friend bool operator==(OrbitPartitionWords const &,
                         OrbitPartitionWords const &) = default;
};

/// Parikh (Abelian) classes of a factor set.
inline WordClasses parikh_classes(FactorSet const &fs)
{
  std::map<ParikhVector, std::size_t> ids;
  std::vector<std::size_t> key(fs.members.size());
  for (std::size_t i = 0; i < fs.members.size(); ++i)
    key[i] = ids.emplace(parikh(fs.members[i]), ids.size()).first->second;
  return detail::classes_by_key(fs.members,
                                [&](std::size_t i) { return key[i]; });
}

struct OrbitOptions {
  /// Largest number of words a single orbit search may visit before the
  /// search switches to applying the enumerated group elements.
  std::size_t visit_cap = std::size_t{1} << 22;
  std::size_t closure_cap = default_closure_cap;
};

/// Orbit classes of `fs` under G. Each orbit is found by breadth-first
/// search over generator (and inverse) applications inside A^n, then
/// intersected with fs; the group itself is never enumerated unless a
/// search exceeds `visit_cap`.
inline OrbitPartitionWords orbit_classes(FactorSet const &fs,
                                         PermGroup const &group,
                                         OrbitOptions const &opts = {})
{
  if (fs.n != group.degree())
    throw input_error("orbit_classes: factor length " + std::to_string(fs.n) +
                      " differs from group degree " +
                      std::to_string(group.degree()));

  OrbitPartitionWords out;
  out.n = fs.n;
  out.group = group;

  // S_n-orbits on A^n are exactly the Parikh classes.
  if (group.full_symmetric()) {
    out.classes = parikh_classes(fs);
    return out;
  }

  std::vector<Permutation> moves;
  for (auto const &g : group.generators()) {
    if (g.is_identity())
      continue;
    moves.push_back(g);
    moves.push_back(inverse(g));
  }
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());

  std::unordered_map<Word, std::size_t> index;
  for (std::size_t i = 0; i < fs.members.size(); ++i)
    index.emplace(fs.members[i], i);

  constexpr std::size_t unassigned = SIZE_MAX;
  std::vector<std::size_t> class_of(fs.members.size(), unassigned);
  std::size_t next_class = 0;

  for (std::size_t start = 0; start < fs.members.size(); ++start) {
    if (class_of[start] != unassigned)
      continue;
    std::size_t id = next_class++;
    class_of[start] = id;

    std::unordered_set<Word> seen{fs.members[start]};
    std::vector<Word> frontier{fs.members[start]};
    bool overflow = false;
    while (!frontier.empty() && !overflow) {
      std::vector<Word> next;
      for (auto const &u : frontier) {
        for (auto const &g : moves) {
          Word v = act(g, u);
          if (!seen.insert(v).second)
            continue;
          if (seen.size() > opts.visit_cap) {
            overflow = true;
            break;
          }
          if (auto it = index.find(v); it != index.end())
            class_of[it->second] = id;
          next.push_back(std::move(v));
        }
        if (overflow)
          break;
      }
      frontier = std::move(next);
    }
    if (overflow) {
      for (auto const &g : group.elements(opts.closure_cap))
        if (auto it = index.find(act(g, fs.members[start])); it != index.end())
          class_of[it->second] = id;
    }
  }

  out.classes = detail::classes_by_key(
      fs.members, [&](std::size_t i) { return class_of[i]; });

  for (auto const &cls : out.classes)
    for (auto const &u : cls)
      if (parikh(u) != parikh(cls.front()))
        throw internal_fault("orbit class of " + cls.front() +
                             " leaves its Parikh class");
  return out;
}

/// p_{omega,x}(n) for G = G_n, n = degree of G.
inline std::size_t p_value(WordSource const &source, PermGroup const &group)
{
  return orbit_classes(factors(source, group.degree()), group).count();
}

/// True iff the ~_G classes of fs coincide with its Parikh classes.
inline bool is_abelian_transitive(FactorSet const &fs, PermGroup const &group)
{
  return orbit_classes(fs, group).classes == parikh_classes(fs);
}

//------------------------------------------------------------------------------
// Block partitions
//------------------------------------------------------------------------------

/// Partition E_1, ..., E_k of {1..n}, blocks ordered by their maximum.
class BlockPartition {
public:
  BlockPartition() = default;

  BlockPartition(std::size_t n, std::vector<std::vector<Point>> blocks)
      : n_(n), blocks_(std::move(blocks))
  {
    std::vector<bool> hit(n_, false);
    std::size_t covered = 0;
    for (auto &block : blocks_) {
      if (block.empty())
        throw input_error("block partition: empty block");
      std::sort(block.begin(), block.end());
      for (Point i : block) {
        if (i < 1 || i > n_ || hit[i - 1])
          throw input_error("block partition: point " + std::to_string(i) +
                            " is out of range or repeated");
        hit[i - 1] = true;
        ++covered;
      }
    }
    if (covered != n_)
      throw input_error("block partition does not cover {1.." +
                        std::to_string(n_) + "}");
    std::sort(blocks_.begin(), blocks_.end(),
              [](auto const &x, auto const &y) { return x.back() < y.back(); });
  }

  /// Consecutive intervals of the given sizes, in the given order.
  static BlockPartition intervals(std::vector<std::size_t> const &sizes)
  {
    std::vector<std::vector<Point>> blocks;
    Point next = 1;
    for (std::size_t m : sizes) {
      std::vector<Point> block(m);
      std::iota(block.begin(), block.end(), next);
      next += static_cast<Point>(m);
      blocks.push_back(std::move(block));
    }
    return BlockPartition(next - 1, std::move(blocks));
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return blocks_.size(); }
  std::vector<std::vector<Point>> const &blocks() const { return blocks_; }
  std::vector<Point> const &block(std::size_t i) const { return blocks_[i]; }

  /// True iff every block is a contiguous range.
  bool is_interval() const
  {
    return std::all_of(blocks_.begin(), blocks_.end(), [](auto const &b) {
      return b.back() - b.front() + 1 == b.size();
    });
  }

  friend bool operator==(BlockPartition const &,
                         BlockPartition const &) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::vector<Point>> blocks_;
};

/// Classes of ~_j: u ~_j v iff u|E_i and v|E_i are Abelian equivalent for
/// every i <= j (1-based).
inline WordClasses block_classes(FactorSet const &fs,
                                 BlockPartition const &partition,
                                 std::size_t j)
{
  if (partition.n() != fs.n)
    throw input_error("block_classes: partition degree " +
                      std::to_string(partition.n()) +
                      " differs from factor length " + std::to_string(fs.n));
  if (j < 1 || j > partition.size())
    throw input_error("block_classes: j = " + std::to_string(j) +
                      " outside 1.." + std::to_string(partition.size()));
  std::map<std::vector<ParikhVector>, std::size_t> ids;
  std::vector<std::size_t> key(fs.members.size());
  for (std::size_t i = 0; i < fs.members.size(); ++i) {
    std::vector<ParikhVector> parts;
    for (std::size_t b = 0; b < j; ++b) {
      auto const &block = partition.block(b);
      parts.push_back(parikh(restrict_to(
          fs.members[i], std::vector<std::size_t>(block.begin(), block.end()))));
    }
    key[i] = ids.emplace(std::move(parts), ids.size()).first->second;
  }
  return detail::classes_by_key(fs.members,
                                [&](std::size_t i) { return key[i]; });
}

//------------------------------------------------------------------------------
// Complexity tables and the lower-bound harness
//------------------------------------------------------------------------------

/// omega = (G_n): returns G_n for each requested n.
using GroupSequence = std::function<PermGroup(std::size_t)>;

struct ComplexityRow {
  std::size_t n = 0;
  std::string group;
  std::size_t epsilon = 0;
  std::size_t p = 0;
  /// p - (epsilon + 1)
  long long slack = 0;

  friend bool operator==(ComplexityRow const &, ComplexityRow const &) = default;
};

struct ComplexityTable {
  std::string word;
  std::vector<ComplexityRow> rows;

  friend bool operator==(ComplexityTable const &,
                         ComplexityTable const &) = default;
};

/// One row per n in [lo, hi]. Groups are requested in ascending n on the
/// calling thread; the rows are then computed concurrently.
inline ComplexityTable complexity_table(WordSource const &source,
                                        GroupSequence const &groups,
                                        std::size_t lo, std::size_t hi)
{
  if (lo < 1 || lo > hi)
    throw input_error("complexity_table: invalid range " + std::to_string(lo) +
                      ".." + std::to_string(hi));
  std::vector<PermGroup> gs;
  for (std::size_t n = lo; n <= hi; ++n) {
    gs.push_back(groups(n));
    if (gs.back().degree() != n)
      throw input_error("group for n = " + std::to_string(n) + " has degree " +
                        std::to_string(gs.back().degree()));
  }

  std::vector<std::future<ComplexityRow>> pending;
  for (auto const &g : gs)
    pending.push_back(std::async(std::launch::async, [&source, g] {
      ComplexityRow row;
      row.n = g.degree();
      row.group = g.label();
      row.epsilon = epsilon(g);
      row.p = p_value(source, g);
      row.slack = static_cast<long long>(row.p) -
                  static_cast<long long>(row.epsilon + 1);
      return row;
    }));

  ComplexityTable table;
  table.word = source.name();
  for (auto &f : pending)
    table.rows.push_back(f.get());
  return table;
}

enum class Verdict { pass, fail, inapplicable };

inline char const *to_string(Verdict v)
{
  switch (v) {
  case Verdict::pass: return "PASS";
  case Verdict::fail: return "FAIL";
  case Verdict::inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

struct Theorem1Report {
  ComplexityTable table;
  Verdict verdict = Verdict::inapplicable;
  /// Smallest n with negative slack.
  std::optional<std::size_t> failing_n;
  /// Slack is zero on every tested n. A bounded observation only.
  bool sturmian_consistent = false;
  /// When sturmian_consistent: |Fact(n)| = n + 1 on the range.
  std::optional<bool> factor_count_check;
  /// When sturmian_consistent: balanced up to the top of the range.
  std::optional<bool> balance_check;
};

/// Checks p(n) >= epsilon(G_n) + 1 on [lo, hi]. Sources that are not
/// aperiodic by construction get the INAPPLICABLE verdict. When equality
/// holds throughout, the Sturmian characterization is cross-checked; from
/// lo = 1 a failed cross-check falsifies the run.
inline Theorem1Report verify_theorem1(WordSource const &source,
                                      GroupSequence const &groups,
                                      std::size_t lo, std::size_t hi)
{
  Theorem1Report report;
  report.table = complexity_table(source, groups, lo, hi);
  if (source.aperiodicity() != Aperiodicity::yes_by_theory) {
    report.verdict = Verdict::inapplicable;
    return report;
  }

  report.verdict = Verdict::pass;
  for (auto const &row : report.table.rows)
    if (row.slack < 0) {
      report.verdict = Verdict::fail;
      report.failing_n = row.n;
      return report;
    }

  report.sturmian_consistent =
      std::all_of(report.table.rows.begin(), report.table.rows.end(),
                  [](auto const &row) { return row.slack == 0; });
  if (report.sturmian_consistent) {
    bool counts = true;
    for (std::size_t n = lo; n <= hi; ++n)
      counts = counts && factors(source, n).size() == n + 1;
    report.factor_count_check = counts;
    report.balance_check = is_balanced(source, hi).balanced;
    if (lo == 1 && !(counts && *report.balance_check))
      report.verdict = Verdict::fail;
  }
  return report;
}

} // namespace gcx

#endif // GCX_COMPLEXITY_HPP
