#ifndef GCX_IO_HPP
#define GCX_IO_HPP

// Serialization of library values. The structured format is JSON with a
// fixed envelope {"format": "gcx", "version": 1, "kind": ..., ...}; field
// names are stable. Tables also render as aligned text and as CSV.

#include "gcx/complexity.hpp"
#include "gcx/construct.hpp"
#include "gcx/perm.hpp"
#include "gcx/words.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace gcx {

inline constexpr int structured_format_version = 1;

using json = nlohmann::ordered_json;

/// Wraps a payload in the versioned envelope.
inline json envelope(std::string const &kind, json payload)
{
  json out;
  out["format"] = "gcx";
  out["version"] = structured_format_version;
  out["kind"] = kind;
  for (auto &[key, value] : payload.items())
    out[key] = value;
  return out;
}

/// Checks the envelope of a parsed document and returns it.
inline json const &expect_kind(json const &doc, std::string const &kind)
{
  if (!doc.is_object() || doc.value("format", "") != "gcx")
    throw input_error("not a gcx structured document");
  if (doc.value("version", 0) != structured_format_version)
    throw input_error("unsupported gcx format version");
  if (doc.value("kind", "") != kind)
    throw input_error("expected a '" + kind + "' document, got '" +
                      doc.value("kind", "") + "'");
  return doc;
}

inline void to_json(json &j, Permutation const &p) { j = to_string(p); }

inline void to_json(json &j, PermGroup const &g)
{
  std::vector<std::string> gens;
  for (auto const &p : g.generators())
    gens.push_back(to_string(p));
  j = json{{"degree", g.degree()},
           {"label", g.label()},
           {"symmetric", g.full_symmetric()},
           {"generators", gens}};
}

inline PermGroup group_from_json(json const &j)
{
  std::size_t n = j.at("degree").get<std::size_t>();
  if (j.value("symmetric", false))
    return PermGroup::symmetric(n);
  std::vector<Permutation> gens;
  for (auto const &text : j.at("generators"))
    gens.push_back(parse_cycles(text.get<std::string>(), n));
  return PermGroup(n, std::move(gens), j.at("label").get<std::string>());
}

inline void to_json(json &j, BlockPartition const &p)
{
  j = json{{"n", p.n()}, {"blocks", p.blocks()}, {"interval", p.is_interval()}};
}

//------------------------------------------------------------------------------
// Documents
//------------------------------------------------------------------------------

inline json to_document(FactorSet const &fs)
{
  return envelope("factors", json{{"n", fs.n},
                                  {"prefix_length", fs.source_prefix_length},
                                  {"count", fs.size()},
                                  {"members", fs.members}});
}

inline FactorSet factor_set_from_document(json const &doc)
{
  expect_kind(doc, "factors");
  FactorSet fs;
  fs.n = doc.at("n").get<std::size_t>();
  fs.source_prefix_length = doc.at("prefix_length").get<std::size_t>();
  fs.members = doc.at("members").get<std::vector<Word>>();
  return fs;
}

inline json to_document(OrbitPartitionWords const &orbits)
{
  return envelope("orbits", json{{"n", orbits.n},
                                 {"group", orbits.group},
                                 {"epsilon", epsilon(orbits.group)},
                                 {"count", orbits.count()},
                                 {"classes", orbits.classes}});
}

inline OrbitPartitionWords orbits_from_document(json const &doc)
{
  expect_kind(doc, "orbits");
  OrbitPartitionWords out;
  out.n = doc.at("n").get<std::size_t>();
  out.group = group_from_json(doc.at("group"));
  out.classes = doc.at("classes").get<WordClasses>();
  return out;
}

inline json to_document(WitnessReport const &r)
{
  std::vector<std::string> cycles;
  for (auto const &c : r.cycles)
    cycles.push_back(to_string(c));
  return envelope("witness", json{{"word", r.word},
                                  {"n", r.n},
                                  {"input", r.input_spec},
                                  {"block_sizes", r.block_sizes},
                                  {"blocks", r.blocks},
                                  {"cycles", cycles},
                                  {"group", r.group},
                                  {"epsilon", r.epsilon},
                                  {"classes", r.class_count},
                                  {"passed", r.passed}});
}

inline WitnessReport witness_from_document(json const &doc)
{
  expect_kind(doc, "witness");
  WitnessReport r;
  r.word = doc.at("word").get<std::string>();
  r.n = doc.at("n").get<std::size_t>();
  r.input_spec = doc.at("input").get<std::string>();
  r.block_sizes = doc.at("block_sizes").get<std::vector<std::size_t>>();
  auto const &blocks = doc.at("blocks");
  r.blocks = BlockPartition(
      blocks.at("n").get<std::size_t>(),
      blocks.at("blocks").get<std::vector<std::vector<Point>>>());
  for (auto const &c : doc.at("cycles"))
    r.cycles.push_back(parse_cycles(c.get<std::string>(), r.n));
  r.group = group_from_json(doc.at("group"));
  r.epsilon = doc.at("epsilon").get<std::size_t>();
  r.class_count = doc.at("classes").get<std::size_t>();
  r.passed = doc.at("passed").get<bool>();
  return r;
}

inline json rows_json(ComplexityTable const &table)
{
  json rows = json::array();
  for (auto const &row : table.rows)
    rows.push_back(json{{"n", row.n},
                        {"group", row.group},
                        {"epsilon", row.epsilon},
                        {"p", row.p},
                        {"slack", row.slack}});
  return rows;
}

inline json to_document(ComplexityTable const &table)
{
  return envelope("complexity-table",
                  json{{"word", table.word}, {"rows", rows_json(table)}});
}

/// Reads the rows of a complexity-table or verify-theorem1 document.
inline ComplexityTable table_from_document(json const &doc)
{
  if (doc.is_object() && doc.value("kind", "") == "verify-theorem1")
    expect_kind(doc, "verify-theorem1");
  else
    expect_kind(doc, "complexity-table");
  ComplexityTable table;
  table.word = doc.at("word").get<std::string>();
  for (auto const &row : doc.at("rows"))
    table.rows.push_back({row.at("n").get<std::size_t>(),
                          row.at("group").get<std::string>(),
                          row.at("epsilon").get<std::size_t>(),
                          row.at("p").get<std::size_t>(),
                          row.at("slack").get<long long>()});
  return table;
}

inline json to_document(Theorem1Report const &r)
{
  json payload{{"word", r.table.word},
               {"rows", rows_json(r.table)},
               {"verdict", to_string(r.verdict)},
               {"sturmian_consistent", r.sturmian_consistent}};
  payload["failing_n"] = r.failing_n ? json(*r.failing_n) : json(nullptr);
  payload["factor_count_check"] =
      r.factor_count_check ? json(*r.factor_count_check) : json(nullptr);
  payload["balance_check"] =
      r.balance_check ? json(*r.balance_check) : json(nullptr);
  return envelope("verify-theorem1", std::move(payload));
}

inline json to_document(ChristoffelArray const &arr)
{
  return envelope("christoffel", json{{"central", arr.central},
                                      {"r", arr.r},
                                      {"s", arr.s},
                                      {"rows", arr.rows}});
}

inline json to_document(FineWilfData const &d)
{
  return envelope("fine-wilf", json{{"m", d.m},
                                    {"w", d.w},
                                    {"w_prev", d.w_prev},
                                    {"r", d.r},
                                    {"s", d.s},
                                    {"p", d.p},
                                    {"q", d.q},
                                    {"a", d.a},
                                    {"b", d.b},
                                    {"c", d.c},
                                    {"cycles", to_string(abc_permutation(
                                                   d.a, d.b, d.c))}});
}

inline json to_document(ScanResult const &scan)
{
  json entries = json::array();
  for (auto const &e : scan.entries)
    entries.push_back(json{{"group", e.group},
                           {"conjugator", to_string(e.conjugator)},
                           {"classes", e.classes}});
  return envelope("scan-conjugates", json{{"n", scan.n},
                                          {"conjugates", scan.entries.size()},
                                          {"min_classes", scan.min_classes},
                                          {"max_classes", scan.max_classes},
                                          {"entries", entries}});
}

//------------------------------------------------------------------------------
// Text and CSV tables
//------------------------------------------------------------------------------

/// Right-aligned columns separated by two spaces, header first.
inline std::string render_aligned(std::vector<std::vector<std::string>> const &rows)
{
  if (rows.empty())
    return {};
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (auto const &row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (auto const &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c)
        os << "  ";
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << '\n';
  }
  return os.str();
}

/// Comma-separated rows. Cells never need quoting: the commas inside
/// cycle notation and abc specs are written as spaces, which the group
/// grammar reads back identically.
inline std::string render_csv(std::vector<std::vector<std::string>> const &rows)
{
  std::ostringstream os;
  for (auto const &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      std::replace(cell.begin(), cell.end(), ',', ' ');
      os << (c ? "," : "") << cell;
    }
    os << '\n';
  }
  return os.str();
}

inline std::vector<std::vector<std::string>> table_cells(ComplexityTable const &t)
{
  std::vector<std::vector<std::string>> cells{
      {"n", "group", "epsilon", "p", "slack"}};
  for (auto const &row : t.rows)
    cells.push_back({std::to_string(row.n), row.group,
                     std::to_string(row.epsilon), std::to_string(row.p),
                     std::to_string(row.slack)});
  return cells;
}

inline std::string render_text(ComplexityTable const &t)
{
  return render_aligned(table_cells(t));
}

inline std::string render_csv(ComplexityTable const &t)
{
  return render_csv(table_cells(t));
}

} // namespace gcx

#endif // GCX_IO_HPP
