#include "cli.hpp"

#include "gcx/complexity.hpp"
#include "gcx/construct.hpp"
#include "gcx/io.hpp"
#include "gcx/perm.hpp"
#include "gcx/version.hpp"
#include "gcx/words.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

namespace gcx::cli {

namespace {

using Cells = std::vector<std::vector<std::string>>;

std::size_t parse_count(std::string const &text)
{
  if (text.empty() || text.size() > 9 ||
      text.find_first_not_of("0123456789") != std::string::npos)
    throw usage_error("expected a positive integer, got '" + text + "'");
  return std::stoul(text);
}

std::pair<std::size_t, std::size_t> parse_range(std::string const &text)
{
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    auto n = parse_count(text);
    return {n, n};
  }
  auto lo = parse_count(text.substr(0, dots));
  auto hi = parse_count(text.substr(dots + 2));
  if (lo > hi)
    throw usage_error("empty range '" + text + "'");
  return {lo, hi};
}

std::string quote_arg(std::string const &arg)
{
  bool plain = !arg.empty() &&
               std::all_of(arg.begin(), arg.end(), [](char ch) {
                 return std::isalnum(static_cast<unsigned char>(ch)) ||
                        std::string_view("-_.:,=/").find(ch) !=
                            std::string_view::npos;
               });
  return plain ? arg : "\"" + arg + "\"";
}

/// Everything a verb produces, before formatting.
struct Output {
  json doc;
  std::string text;
  Cells csv;
  std::vector<std::string> notes;
  std::string err;
  int exit_code = 0;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_words(std::vector<Word> const &words)
{
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i)
    out += (i ? "," : "") + words[i];
  return out;
}

std::string classes_text(WordClasses const &classes)
{
  std::string out;
  for (auto const &c : classes)
    out += "[" + join_words(c) + "]\n";
  return out;
}

Cells classes_csv(WordClasses const &classes)
{
  Cells cells{{"class", "word"}};
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (auto const &w : classes[i])
      cells.push_back({std::to_string(i + 1), w});
  return cells;
}

std::string points_text(std::vector<Point> const &block)
{
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i)
    out += (i ? "," : "") + std::to_string(block[i]);
  return out + "}";
}

Output do_factors(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto fs = factors(source, cmd.n_lo);
  Output out;
  out.doc = to_document(fs);
  out.text = "word " + source.name() + "  n " + std::to_string(fs.n) +
             "  count " + std::to_string(fs.size()) + "\n";
  out.csv = {{"factor"}};
  for (auto const &w : fs.members) {
    out.text += w + "\n";
    out.csv.push_back({w});
  }
  return out;
}

Output do_orbits(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto group = parse_group_spec(cmd.group_spec, cmd.n_lo);
  auto fs = factors(source, cmd.n_lo);
  auto orbits = orbit_classes(fs, group);
  bool transitive = is_abelian_transitive(fs, group);
  Output out;
  out.doc = to_document(orbits);
  out.doc["abelian_transitive"] = transitive;
  out.text = "word " + source.name() + "  n " + std::to_string(fs.n) +
             "  group " + group.label() + "  epsilon " +
             std::to_string(epsilon(group)) + "  classes " +
             std::to_string(orbits.count()) + "  abelian-transitive " +
             yes_no(transitive) + "\n" + classes_text(orbits.classes);
  out.csv = classes_csv(orbits.classes);
  return out;
}

Output do_epsilon(Command const &cmd)
{
  auto group = parse_group_spec(cmd.group_spec, cmd.n_lo);
  auto orbits = point_orbits(group);
  Output out;
  out.doc = envelope("epsilon", json{{"n", group.degree()},
                                     {"group", group},
                                     {"epsilon", orbits.count()},
                                     {"blocks", orbits.blocks}});
  out.text = "n " + std::to_string(group.degree()) + "  group " +
             group.label() + "  epsilon " + std::to_string(orbits.count()) +
             "\n";
  out.csv = {{"block", "point"}};
  for (std::size_t i = 0; i < orbits.blocks.size(); ++i) {
    out.text += (i ? " " : "") + points_text(orbits.blocks[i]);
    for (auto p : orbits.blocks[i])
      out.csv.push_back({std::to_string(i + 1), std::to_string(p)});
  }
  out.text += "\n";
  return out;
}

Output do_table(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto table = complexity_table(source, group_rule(cmd.group_spec), cmd.n_lo,
                                cmd.n_hi);
  Output out;
  out.doc = to_document(table);
  out.text = "word " + table.word + "\n" + render_text(table);
  out.csv = table_cells(table);
  return out;
}

Output do_verify(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto report = verify_theorem1(source, group_rule(cmd.group_spec), cmd.n_lo,
                                cmd.n_hi);
  Output out;
  out.doc = to_document(report);
  out.text = "word " + report.table.word + "  aperiodic " +
             to_string(source.aperiodicity()) + "\n" +
             render_text(report.table);
  out.csv = table_cells(report.table);

  std::vector<std::string> lines;
  lines.push_back(std::string("verdict: ") + to_string(report.verdict));
  if (report.failing_n)
    lines.push_back("failing n: " + std::to_string(*report.failing_n));
  lines.push_back("sturmian-consistent: " + yes_no(report.sturmian_consistent));
  if (report.factor_count_check)
    lines.push_back("factor count n+1: " + yes_no(*report.factor_count_check));
  if (report.balance_check)
    lines.push_back("balanced: " + yes_no(*report.balance_check));
  for (auto const &l : lines)
    out.text += l + "\n";
  out.notes = lines;

  switch (report.verdict) {
  case Verdict::pass: out.exit_code = 0; break;
  case Verdict::fail: out.exit_code = 1; break;
  case Verdict::inapplicable:
    out.exit_code = 2;
    out.err = "gcx: " + source.name() +
              " is not aperiodic by construction; the bound does not apply\n";
    break;
  }
  return out;
}

Output witness_output(WitnessReport const &r)
{
  Output out;
  out.doc = to_document(r);
  std::string sizes, blocks, cycles;
  for (std::size_t i = 0; i < r.block_sizes.size(); ++i)
    sizes += (i ? "," : "") + std::to_string(r.block_sizes[i]);
  for (std::size_t i = 0; i < r.blocks.size(); ++i)
    blocks += (i ? " " : "") + points_text(r.blocks.block(i));
  for (std::size_t i = 0; i < r.cycles.size(); ++i)
    cycles += (i ? " " : "") + to_string(r.cycles[i]);
  std::vector<std::pair<std::string, std::string>> fields{
      {"word", r.word},
      {"n", std::to_string(r.n)},
      {"input", r.input_spec},
      {"block_sizes", sizes},
      {"blocks", blocks},
      {"cycles", cycles},
      {"group", r.group.label()},
      {"epsilon", std::to_string(r.epsilon)},
      {"classes", std::to_string(r.class_count)},
      {"passed", yes_no(r.passed)}};
  out.csv = {{"field", "value"}};
  for (auto const &[key, value] : fields) {
    out.text += key + ": " + value + "\n";
    out.csv.push_back({key, value});
  }
  out.exit_code = r.passed ? 0 : 1;
  return out;
}

Output do_witness(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto spec = parse_abelian_spec(cmd.abelian);
  return witness_output(build_isomorphic_witness(source, cmd.n_lo, spec));
}

Output do_conjugate_witness(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  std::optional<std::size_t> degree;
  if (cmd.n_lo)
    degree = cmd.n_lo;
  auto sigma = parse_cycles(cmd.perm, degree);
  return witness_output(build_conjugate_witness(source, sigma));
}

Output do_christoffel(Command const &cmd)
{
  auto arr = christoffel_array(cmd.central);
  Output out;
  out.doc = to_document(arr);
  out.text = render(arr);
  for (auto const &row : arr.rows) {
    std::vector<std::string> cells;
    for (char ch : row)
      cells.emplace_back(1, ch);
    out.csv.push_back(cells);
  }
  return out;
}

Output do_scan(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto group = parse_group_spec(cmd.group_spec, cmd.n_lo);
  auto scan = conjugacy_scan(source, group);
  Output out;
  out.doc = to_document(scan);
  out.text = "word " + source.name() + "  n " + std::to_string(scan.n) +
             "  group " + group.label() + "  conjugates " +
             std::to_string(scan.entries.size()) + "  min " +
             std::to_string(scan.min_classes) + "  max " +
             std::to_string(scan.max_classes) + "\n";
  Cells cells{{"conjugate", "classes", "conjugator", "group"}};
  for (std::size_t i = 0; i < scan.entries.size(); ++i) {
    auto const &e = scan.entries[i];
    cells.push_back({std::to_string(i + 1), std::to_string(e.classes),
                     to_string(e.conjugator), e.group.describe()});
  }
  out.text += render_aligned(cells);
  out.csv = std::move(cells);
  return out;
}

Output do_fine_wilf(Command const &cmd)
{
  auto source = parse_word_spec(cmd.word_spec);
  auto d = fine_wilf_data(source, cmd.n_lo);
  auto sigma = sturmian_cycle(source, cmd.n_lo);
  Output out;
  out.doc = to_document(d);
  std::vector<std::pair<std::string, std::string>> fields{
      {"m", std::to_string(d.m)},   {"w", d.w},
      {"w_prev", d.w_prev.empty() ? "-" : d.w_prev},
      {"r", std::to_string(d.r)},   {"s", std::to_string(d.s)},
      {"p", std::to_string(d.p)},   {"q", std::to_string(d.q)},
      {"a", std::to_string(d.a)},   {"b", std::to_string(d.b)},
      {"c", std::to_string(d.c)},   {"cycle", to_string(sigma)}};
  out.csv = {{"field", "value"}};
  for (auto const &[key, value] : fields) {
    out.text += key + ": " + value + "\n";
    out.csv.push_back({key, value});
  }
  return out;
}

Output dispatch(Command const &cmd)
{
  static std::map<std::string, Output (*)(Command const &)> const verbs{
      {"factors", do_factors},
      {"orbits", do_orbits},
      {"epsilon", do_epsilon},
      {"complexity-table", do_table},
      {"verify-theorem1", do_verify},
      {"witness", do_witness},
      {"conjugate-witness", do_conjugate_witness},
      {"christoffel", do_christoffel},
      {"scan-conjugates", do_scan},
      {"fine-wilf", do_fine_wilf}};
  auto it = verbs.find(cmd.verb);
  if (it == verbs.end())
    throw usage_error("unknown verb '" + cmd.verb + "'");
  return it->second(cmd);
}

char const *const usage_text =
    "usage: gcx VERB [options]\n"
    "  factors            --word W --n N\n"
    "  orbits             --word W --n N --group G\n"
    "  epsilon            --n N --group G\n"
    "  complexity-table   --word W --n A..B --groups RULE\n"
    "  verify-theorem1    --word W --n A..B --groups RULE\n"
    "  witness            --word W --n N --abelian SPEC\n"
    "  conjugate-witness  --word W --perm CYCLES [--n N]\n"
    "  christoffel        --w CENTRAL\n"
    "  scan-conjugates    --word W --n N --group G   (N <= 8)\n"
    "  fine-wilf          --word W --n M   (M >= 4)\n"
    "common: --format text|csv|structured, --timing\n"
    "words:  fib | tm | sturmian:d1,d2,... | sturmian:d1,...,(t1,...) |\n"
    "        subst:0=01,1=0;seed=0 | periodic:P | prefix:BITS\n"
    "groups: id | sym | cyc | abc:a,b,c | (1,2,3)(4,5);(1,4)\n"
    "rules:  any group spec, evaluated at each n, or file:PATH\n";

} // namespace

GroupSequence group_rule(std::string const &rule)
{
  if (rule.rfind("file:", 0) != 0)
    return [rule](std::size_t n) { return parse_group_spec(rule, n); };
  std::string path = rule.substr(5);
  std::ifstream in(path);
  if (!in)
    throw input_error("cannot read group file '" + path + "'");
  std::map<std::size_t, std::string> table;
  std::string line;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#')
      continue;
    std::istringstream is(line.substr(start));
    std::string n_text, spec;
    is >> n_text;
    std::getline(is >> std::ws, spec);
    auto n = parse_count(n_text);
    if (spec.empty())
      throw input_error("group file '" + path + "': no group for n = " + n_text);
    if (!table.emplace(n, spec).second)
      throw input_error("group file '" + path + "': n = " + n_text +
                        " given twice");
  }
  return [table, path](std::size_t n) {
    auto it = table.find(n);
    if (it == table.end())
      throw input_error("group file '" + path + "' has no entry for n = " +
                        std::to_string(n));
    return parse_group_spec(it->second, n);
  };
}

Command parse_command(std::vector<std::string> const &args)
{
  Command cmd;
  std::string n_text, format = "text";

  CLI::App app{"gcx: group-action factor complexity of infinite words", "gcx"};
  app.require_subcommand(1, 1);
  app.set_help_flag();

  struct Verb {
    char const *name;
    char const *about;
    bool word, n, group, groups, abelian, perm, central;
  };
  // word n group groups abelian perm central
  std::vector<Verb> const verbs{
      {"factors", "length-n factors", true, true, false, false, false, false, false},
      {"orbits", "orbit classes of Fact(n) under a group", true, true, true, false, false, false, false},
      {"epsilon", "number of point orbits of a group", false, true, true, false, false, false, false},
      {"complexity-table", "p(n), epsilon and slack over a range", true, true, false, true, false, false, false},
      {"verify-theorem1", "check p(n) >= epsilon + 1 over a range", true, true, false, true, false, false, false},
      {"witness", "Abelian witness group with epsilon + 1 classes", true, true, false, false, true, false, false},
      {"conjugate-witness", "witness conjugate to a permutation", true, false, false, false, false, true, false},
      {"christoffel", "Christoffel array of a central word", false, false, false, false, false, false, true},
      {"scan-conjugates", "class counts over all conjugates in S_n", true, true, true, false, false, false, false},
      {"fine-wilf", "interval exchange data for length m", true, true, false, false, false, false, false}};

  for (auto const &v : verbs) {
    auto *sub = app.add_subcommand(v.name, v.about);
    sub->set_help_flag();
    if (v.word)
      sub->add_option("--word", cmd.word_spec, "word spec")->required();
    if (v.n)
      sub->add_option("--n", n_text, "length, or a..b for ranges")->required();
    if (v.group)
      sub->add_option("--group", cmd.group_spec, "group spec")->required();
    if (v.groups)
      sub->add_option("--groups", cmd.group_spec, "per-n group rule")->required();
    if (v.abelian)
      sub->add_option("--abelian", cmd.abelian, "Abelian spec")->required();
    if (v.perm) {
      sub->add_option("--perm", cmd.perm, "permutation in cycle notation")
          ->required();
      sub->add_option("--n", n_text, "degree");
    }
    if (v.central)
      sub->add_option("--w", cmd.central, "central word")->required();
    sub->add_option("--format", format, "text, csv or structured")
        ->check(CLI::IsMember({"text", "csv", "structured"}));
    sub->add_flag("--timing", cmd.timing, "report wall time on stderr");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::ParseError const &e) {
    throw usage_error(e.what());
  }

  cmd.verb = app.get_subcommands().front()->get_name();
  cmd.format = format == "csv"          ? Format::csv
               : format == "structured" ? Format::structured
                                        : Format::text;
  bool ranged = cmd.verb == "complexity-table" || cmd.verb == "verify-theorem1";
  if (!n_text.empty()) {
    std::tie(cmd.n_lo, cmd.n_hi) =
        ranged ? parse_range(n_text) : std::pair{parse_count(n_text), std::size_t{0}};
    if (!ranged)
      cmd.n_hi = cmd.n_lo;
    if (cmd.n_lo == 0)
      throw usage_error("n must be positive");
  }
  if (cmd.verb == "scan-conjugates" && cmd.n_lo > max_scan_degree)
    throw usage_error("scan-conjugates: n = " + std::to_string(cmd.n_lo) +
                      " exceeds the limit " + std::to_string(max_scan_degree));

  std::string echo;
  for (auto const &a : args)
    echo += (echo.empty() ? "" : " ") + quote_arg(a);
  cmd.echo = echo;
  return cmd;
}

RunReport execute(Command const &cmd)
{
  RunReport report;
  auto start = std::chrono::steady_clock::now();
  Output out;
  try {
    out = dispatch(cmd);
  } catch (internal_fault const &e) {
    report.exit_code = 1;
    report.err = std::string("gcx: internal check failed: ") + e.what() + "\n";
    return report;
  } catch (std::exception const &e) {
    report.exit_code = 2;
    report.err = std::string("gcx: ") + e.what() + "\n";
    return report;
  }
  auto elapsed = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  std::string header = "# gcx " + std::string(library_version) + ": " + cmd.echo;
  switch (cmd.format) {
  case Format::text:
    report.out = header + "\n" + out.text;
    break;
  case Format::csv:
    report.out = header + "\n";
    for (auto const &note : out.notes)
      report.out += "# " + note + "\n";
    report.out += render_csv(out.csv);
    break;
  case Format::structured:
    out.doc["command"] = cmd.echo;
    out.doc["library_version"] = library_version;
    report.out = out.doc.dump(2) + "\n";
    break;
  }
  report.exit_code = out.exit_code;
  report.err = out.err;
  if (cmd.timing) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << "gcx: " << cmd.verb << " took " << elapsed << " ms\n";
    report.err += os.str();
  }
  return report;
}

RunReport run(std::vector<std::string> const &args)
{
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    RunReport report;
    report.exit_code = args.empty() ? 2 : 0;
    (args.empty() ? report.err : report.out) = usage_text;
    return report;
  }
  Command cmd;
  try {
    if (args.front().rfind("-", 0) != 0 &&
        std::string_view(usage_text).find("  " + args.front() + " ") ==
            std::string_view::npos)
      throw usage_error("unknown verb '" + args.front() + "'");
    cmd = parse_command(args);
  } catch (std::exception const &e) {
    RunReport report;
    report.exit_code = 2;
    report.err = std::string("gcx: ") + e.what() + "\n";
    return report;
  }
  return execute(cmd);
}

} // namespace gcx::cli
