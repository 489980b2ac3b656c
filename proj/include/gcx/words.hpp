#ifndef GCX_WORDS_HPP
#define GCX_WORDS_HPP

// Finite prefixes of infinite words, factor sets, Parikh vectors and the
// special-factor structure of binary words.
//
// Positions inside a word are 1-based in every public function, so that a
// word of length n is a map {1..n} -> alphabet.

#include "gcx/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gcx {

/// A finite word. Each char is one letter; the canonical binary alphabet
/// is {'0', '1'} and lexicographic order is the order of std::string.
using Word = std::string;

/// Letter counts |u|_a. Letters with count zero are never stored, so two
/// vectors compare equal exactly when every count agrees.
class ParikhVector {
public:
  ParikhVector() = default;

  explicit ParikhVector(std::string_view u)
  {
    for (char a : u)
      ++counts_[a];
  }

  std::size_t count(char a) const
  {
    auto it = counts_.find(a);
    return it == counts_.end() ? 0 : it->second;
  }

  std::size_t total() const
  {
    std::size_t t = 0;
    for (auto const &[a, c] : counts_)
      t += c;
    return t;
  }

  std::map<char, std::size_t> const &counts() const { return counts_; }

  friend bool operator==(ParikhVector const &, ParikhVector const &) = default;
  friend auto operator<=>(ParikhVector const &, ParikhVector const &) = default;

private:
  std::map<char, std::size_t> counts_;
};

inline ParikhVector parikh(std::string_view u) { return ParikhVector(u); }

inline bool abelian_equiv(std::string_view u, std::string_view v)
{
  if (u.size() != v.size())
    throw input_error("abelian_equiv: length mismatch (" +
                      std::to_string(u.size()) + " vs " +
                      std::to_string(v.size()) + ")");
  return parikh(u) == parikh(v);
}

/// u|_S: the letters of u at the 1-based positions of S, in increasing
/// position order.
inline Word restrict_to(std::string_view u, std::vector<std::size_t> positions)
{
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()),
                  positions.end());
  Word out;
  out.reserve(positions.size());
  for (std::size_t i : positions) {
    if (i < 1 || i > u.size())
      throw input_error("restrict: position " + std::to_string(i) +
                        " outside 1.." + std::to_string(u.size()));
    out.push_back(u[i - 1]);
  }
  return out;
}

inline Word reverse(std::string_view u) { return Word(u.rbegin(), u.rend()); }

inline bool is_palindrome(std::string_view u)
{
  return std::equal(u.begin(), u.begin() + u.size() / 2, u.rbegin());
}

//------------------------------------------------------------------------------
// Word sources
//------------------------------------------------------------------------------

enum class SourceKind { substitution, sturmian, periodic, explicit_prefix };

/// What is known, by construction, about the aperiodicity of a source.
enum class Aperiodicity { yes_by_theory, no, unknown };

inline char const *to_string(Aperiodicity a)
{
  switch (a) {
  case Aperiodicity::yes_by_theory: return "yes-by-theory";
  case Aperiodicity::no: return "no";
  case Aperiodicity::unknown: return "unknown";
  }
  return "?";
}

/// Directive sequence (d_1, d_2, ...) of a characteristic Sturmian word:
/// `head` is read once, then `tail` repeats forever.
struct Directive {
  std::vector<std::size_t> head;
  std::vector<std::size_t> tail;

  /// d_k for k >= 1.
  std::size_t digit(std::size_t k) const
  {
    if (k <= head.size())
      return head[k - 1];
    return tail[(k - 1 - head.size()) % tail.size()];
  }

  std::string to_string() const
  {
    std::ostringstream os;
    bool first = true;
    for (auto d : head) {
      os << (first ? "" : ",") << d;
      first = false;
    }
    if (!head.empty() && tail.size() == 1 && tail[0] == head.back()) {
      // already canonical as "last digit repeated"
      return os.str();
    }
    os << (first ? "" : ",") << "(";
    for (std::size_t i = 0; i < tail.size(); ++i)
      os << (i ? "," : "") << tail[i];
    os << ")";
    return os.str();
  }
};

/// A generator of finite prefixes of an infinite word. Copies share one
/// prefix cache; the cache is guarded, so sources may be used from several
/// threads.
class WordSource {
public:
  /// Fixed point of a non-erasing substitution prolongable on `seed`.
  static WordSource substitution(std::map<char, std::string> rules, char seed,
                                 Aperiodicity aperiodic = Aperiodicity::unknown,
                                 bool sturmian = false, std::string name = {})
  {
    if (rules.empty())
      throw input_error("substitution: no rules");
    for (auto const &[a, image] : rules) {
      if (image.empty())
        throw input_error(std::string("substitution: erasing rule for '") + a +
                          "'");
      for (char b : image)
        if (!rules.count(b))
          throw input_error(std::string("substitution: no rule for letter '") +
                            b + "'");
    }
    auto it = rules.find(seed);
    if (it == rules.end() || it->second.size() < 2 || it->second[0] != seed)
      throw input_error(std::string("substitution: not prolongable on '") +
                        seed + "'");
    if (name.empty()) {
      std::ostringstream os;
      os << "subst:";
      bool first = true;
      for (auto const &[a, image] : rules) {
        os << (first ? "" : ",") << a << '=' << image;
        first = false;
      }
      os << ";seed=" << seed;
      name = os.str();
    }
    auto s = std::make_shared<state>();
    s->kind = SourceKind::substitution;
    s->aperiodic = aperiodic;
    s->sturmian = sturmian;
    s->name = std::move(name);
    s->rules = std::move(rules);
    s->seed = seed;
    return WordSource(std::move(s));
  }

  /// The Fibonacci word, fixed point of 0 -> 01, 1 -> 0.
  static WordSource fibonacci()
  {
    return substitution({{'0', "01"}, {'1', "0"}}, '0',
                        Aperiodicity::yes_by_theory, true, "fib");
  }

  /// The Thue-Morse word, fixed point of 0 -> 01, 1 -> 10.
  static WordSource thue_morse()
  {
    return substitution({{'0', "01"}, {'1', "10"}}, '0',
                        Aperiodicity::yes_by_theory, false, "tm");
  }

  /// Characteristic Sturmian word built by the standard-word recursion
  /// s_{-1} = 1, s_0 = 0, s_k = s_{k-1}^{d_k} s_{k-2}.
  static WordSource sturmian(Directive directive)
  {
    if (directive.tail.empty())
      throw input_error("sturmian: empty directive");
    for (std::size_t d : directive.head)
      if (d == 0)
        throw input_error("sturmian: directive digits must be positive");
    for (std::size_t d : directive.tail)
      if (d == 0)
        throw input_error("sturmian: directive digits must be positive");
    auto s = std::make_shared<state>();
    s->kind = SourceKind::sturmian;
    s->aperiodic = Aperiodicity::yes_by_theory;
    s->sturmian = true;
    s->name = "sturmian:" + directive.to_string();
    s->directive = std::move(directive);
    return WordSource(std::move(s));
  }

  /// Convenience: the given digits, the last one repeated forever.
  static WordSource sturmian(std::vector<std::size_t> digits)
  {
    if (digits.empty())
      throw input_error("sturmian: empty directive");
    Directive d;
    d.tail = {digits.back()};
    d.head = std::move(digits);
    return sturmian(std::move(d));
  }

  static WordSource periodic(std::string pattern)
  {
    if (pattern.empty())
      throw input_error("periodic: empty pattern");
    auto s = std::make_shared<state>();
    s->kind = SourceKind::periodic;
    s->aperiodic = Aperiodicity::no;
    s->name = "periodic:" + pattern;
    s->pattern = std::move(pattern);
    return WordSource(std::move(s));
  }

  /// A fixed finite prefix; nothing is known about the infinite word.
  static WordSource explicit_prefix(std::string letters)
  {
    if (letters.empty())
      throw input_error("prefix: empty word");
    auto s = std::make_shared<state>();
    s->kind = SourceKind::explicit_prefix;
    s->aperiodic = Aperiodicity::unknown;
    s->name = "prefix:" + letters;
    s->cache = std::move(letters);
    return WordSource(std::move(s));
  }

  SourceKind kind() const { return state_->kind; }
  Aperiodicity aperiodicity() const { return state_->aperiodic; }
  /// True when the source is Sturmian by construction.
  bool is_sturmian() const { return state_->sturmian; }
  std::string const &name() const { return state_->name; }
  Directive const &directive() const { return state_->directive; }

  /// Longest available prefix; only explicit sources are bounded.
  std::optional<std::size_t> max_length() const
  {
    if (state_->kind == SourceKind::explicit_prefix)
      return state_->cache.size();
    return std::nullopt;
  }

  /// The first `length` letters of the word.
  Word prefix(std::size_t length) const
  {
    if (length == 0)
      throw input_error("prefix: length must be positive");
    std::lock_guard lock(state_->mutex);
    if (state_->cache.size() < length) {
      if (state_->kind == SourceKind::explicit_prefix)
        throw input_error("prefix: requested " + std::to_string(length) +
                          " letters of an explicit word of length " +
                          std::to_string(state_->cache.size()));
      state_->cache = generate(std::max(length, 2 * state_->cache.size()));
    }
    return state_->cache.substr(0, length);
  }

private:
  struct state {
    SourceKind kind{};
    Aperiodicity aperiodic{};
    bool sturmian = false;
    std::string name;
    std::map<char, std::string> rules;
    char seed = '0';
    Directive directive;
    std::string pattern;
    std::mutex mutex;
    std::string cache;
  };

  explicit WordSource(std::shared_ptr<state> s) : state_(std::move(s)) {}

  std::string generate(std::size_t length) const
  {
    state const &s = *state_;
    std::string w;
    switch (s.kind) {
    case SourceKind::substitution: {
      w.assign(1, s.seed);
      while (w.size() < length) {
        std::string next;
        next.reserve(2 * w.size());
        for (char a : w)
          next += s.rules.at(a);
        w = std::move(next);
      }
      break;
    }
    case SourceKind::sturmian: {
      std::string older = "1", old = "0";
      for (std::size_t k = 1; old.size() < length; ++k) {
        std::string next;
        for (std::size_t i = 0; i < s.directive.digit(k); ++i)
          next += old;
        next += older;
        older = std::move(old);
        old = std::move(next);
      }
      w = std::move(old);
      break;
    }
    case SourceKind::periodic:
      while (w.size() < length)
        w += s.pattern;
      break;
    case SourceKind::explicit_prefix:
      w = s.cache;
      break;
    }
    w.resize(length);
    return w;
  }

  std::shared_ptr<state> state_;
};

/// Parses the word-spec grammar:
///   fib | tm | sturmian:d1,d2,... | sturmian:d1,...,(t1,t2,...)
///   | subst:0=01,1=0;seed=0 | periodic:PATTERN | prefix:BITS
/// A plain directive repeats its last digit forever; a parenthesised group
/// at the end repeats as a block.
inline WordSource parse_word_spec(std::string const &text)
{
  auto digits_of = [&](std::string_view list) {
    std::vector<std::size_t> out;
    std::string item;
    std::istringstream is{std::string(list)};
    while (std::getline(is, item, ',')) {
      if (item.empty() ||
          item.find_first_not_of("0123456789") != std::string::npos)
        throw input_error("malformed directive digit '" + item + "' in '" +
                          text + "'");
      out.push_back(std::stoul(item));
    }
    return out;
  };

  if (text == "fib")
    return WordSource::fibonacci();
  if (text == "tm")
    return WordSource::thue_morse();

  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw input_error("unknown word spec '" + text + "'");
  std::string kind = text.substr(0, colon);
  std::string body = text.substr(colon + 1);

  if (kind == "sturmian") {
    Directive d;
    auto open = body.find('(');
    if (open != std::string::npos) {
      if (body.back() != ')')
        throw input_error("malformed directive '" + body + "'");
      std::string head = body.substr(0, open);
      if (!head.empty()) {
        if (head.back() != ',')
          throw input_error("malformed directive '" + body + "'");
        head.pop_back();
        d.head = digits_of(head);
      }
      d.tail = digits_of(body.substr(open + 1, body.size() - open - 2));
    } else {
      d.head = digits_of(body);
      if (d.head.empty())
        throw input_error("sturmian: empty directive");
      d.tail = {d.head.back()};
    }
    return WordSource::sturmian(std::move(d));
  }
  if (kind == "periodic")
    return WordSource::periodic(body);
  if (kind == "prefix")
    return WordSource::explicit_prefix(body);
  if (kind == "subst") {
    auto semi = body.find(";seed=");
    if (semi == std::string::npos || semi + 7 != body.size())
      throw input_error("subst: expected ';seed=<letter>' in '" + text + "'");
    char seed = body.back();
    std::map<char, std::string> rules;
    std::istringstream is(body.substr(0, semi));
    std::string rule;
    while (std::getline(is, rule, ',')) {
      if (rule.size() < 3 || rule[1] != '=')
        throw input_error("subst: malformed rule '" + rule + "'");
      if (!rules.emplace(rule[0], rule.substr(2)).second)
        throw input_error(std::string("subst: duplicate rule for '") + rule[0] +
                          "'");
    }
    return WordSource::substitution(std::move(rules), seed);
  }
  throw input_error("unknown word spec kind '" + kind + "'");
}

//------------------------------------------------------------------------------
// Factor sets
//------------------------------------------------------------------------------

/// Fact_x(n), lexicographically ordered.
struct FactorSet {
  std::size_t n = 0;
  std::vector<Word> members;
  std::size_t source_prefix_length = 0;

  std::size_t size() const { return members.size(); }

  bool contains(std::string_view u) const
  {
    return std::binary_search(members.begin(), members.end(), u);
  }

  friend bool operator==(FactorSet const &, FactorSet const &) = default;
};

/// Prefix lengths for the doubling protocol of `factors`.
struct FactorOptions {
  std::size_t min_prefix = 4096;
  std::size_t per_length = 64;
  std::size_t cap = std::size_t{1} << 22;
};

namespace detail {

inline std::vector<Word> windows(std::string_view w, std::size_t n)
{
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + n <= w.size(); ++i)
    seen.insert(w.substr(i, n));
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace detail

/// Length-n factors of the source. The set is read from a prefix of length
/// L and again from 2L, doubling L until both agree; explicit sources use
/// their whole prefix.
inline FactorSet factors(WordSource const &source, std::size_t n,
                         FactorOptions const &opts = {})
{
  if (n == 0)
    throw input_error("factors: n must be positive");

  FactorSet fs;
  fs.n = n;
  if (auto bound = source.max_length()) {
    if (n > *bound)
      throw input_error("factors: n = " + std::to_string(n) +
                        " exceeds explicit word length " +
                        std::to_string(*bound));
    fs.members = detail::windows(source.prefix(*bound), n);
    fs.source_prefix_length = *bound;
    return fs;
  }

  std::size_t length = std::max(opts.min_prefix, opts.per_length * n);
  for (;;) {
    if (2 * length > opts.cap)
      throw stabilization_error(
          "factors of length " + std::to_string(n) + " of " + source.name() +
          " did not stabilize below prefix cap " + std::to_string(opts.cap));
    Word w = source.prefix(2 * length);
    auto shorter = detail::windows(std::string_view(w).substr(0, length), n);
    auto longer = detail::windows(w, n);
    if (shorter == longer) {
      fs.members = std::move(longer);
      fs.source_prefix_length = 2 * length;
      break;
    }
    length *= 2;
  }

  if (source.is_sturmian() && fs.members.size() != n + 1)
    throw internal_fault("Sturmian source " + source.name() + " has " +
                         std::to_string(fs.members.size()) +
                         " factors of length " + std::to_string(n));
  return fs;
}

/// The letters occurring in the factors of length 1.
inline std::vector<char> alphabet(WordSource const &source)
{
  std::vector<char> out;
  for (auto const &f : factors(source, 1).members)
    out.push_back(f[0]);
  return out;
}

/// Result of a bounded balance check. `witness` holds two equal-length
/// factors whose count of some letter differs by two or more.
struct BalanceResult {
  bool balanced = true;
  std::optional<std::pair<Word, Word>> witness;
};

inline BalanceResult is_balanced(WordSource const &source, std::size_t n_max)
{
  if (n_max == 0)
    throw input_error("is_balanced: n_max must be positive");
  BalanceResult result;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto fs = factors(source, n);
    std::set<char> letters;
    for (auto const &u : fs.members)
      letters.insert(u.begin(), u.end());
    for (char a : letters) {
      auto const *hi = &fs.members.front();
      auto const *lo = &fs.members.front();
      auto count = [a](Word const &u) {
        return static_cast<std::size_t>(std::count(u.begin(), u.end(), a));
      };
      for (auto const &u : fs.members) {
        if (count(u) > count(*hi))
          hi = &u;
        if (count(u) < count(*lo))
          lo = &u;
      }
      if (count(*hi) > count(*lo) + 1) {
        result.balanced = false;
        result.witness = std::pair{*hi, *lo};
        return result;
      }
    }
  }
  return result;
}

/// Special factors of one length, each list lexicographically ordered.
struct SpecialFactors {
  std::vector<Word> left;
  std::vector<Word> right;
  std::vector<Word> bispecial;
};

inline SpecialFactors special_factors(WordSource const &source, std::size_t n)
{
  auto longer = factors(source, n + 1).members;
  std::map<Word, std::set<char>> before, after;
  for (auto const &v : longer) {
    before[v.substr(1)].insert(v.front());
    after[v.substr(0, n)].insert(v.back());
  }
  SpecialFactors out;
  for (auto const &[u, letters] : before)
    if (letters.size() >= 2)
      out.left.push_back(u);
  for (auto const &[u, letters] : after)
    if (letters.size() >= 2)
      out.right.push_back(u);
  std::set_intersection(out.left.begin(), out.left.end(), out.right.begin(),
                        out.right.end(), std::back_inserter(out.bispecial));
  return out;
}

/// All bispecial factors of length <= up_to in increasing length, starting
/// with the empty word. Only defined for Sturmian sources, whose bispecial
/// factors are palindromes; a non-palindromic entry is reported as a fault.
inline std::vector<Word> bispecial_ladder(WordSource const &source,
                                          std::size_t up_to)
{
  if (!source.is_sturmian())
    throw input_error("bispecial_ladder: " + source.name() +
                      " is not a Sturmian source");
  std::vector<Word> ladder{Word{}};
  for (std::size_t n = 1; n <= up_to; ++n) {
    auto sf = special_factors(source, n);
    if (sf.left.size() != 1 || sf.right.size() != 1)
      throw internal_fault("Sturmian source " + source.name() +
                           " lacks a unique special factor of length " +
                           std::to_string(n));
    for (auto &w : sf.bispecial) {
      if (!is_palindrome(w))
        throw internal_fault("non-palindromic bispecial factor " + w);
      ladder.push_back(std::move(w));
    }
  }
  return ladder;
}

/// True iff |u|_a is maximal among the members of `fs`.
inline bool is_rich_in(std::string_view u, char a, FactorSet const &fs)
{
  if (!fs.contains(u))
    throw input_error("is_rich_in: '" + std::string(u) +
                      "' is not a member of the factor set");
  auto count = [a](std::string_view v) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), a));
  };
  auto mine = count(u);
  return std::all_of(fs.members.begin(), fs.members.end(),
                     [&](Word const &v) { return count(v) <= mine; });
}

} // namespace gcx

#endif // GCX_WORDS_HPP
