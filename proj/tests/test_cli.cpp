#include "cli.hpp"

#include "gcx/io.hpp"
#include "gcx/version.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace gcx;
using gcx::cli::run;

namespace {

using Args = std::vector<std::string>;

/// Runs the installed binary through the shell; returns exit code and stdout.
std::pair<int, std::string> shell(std::string const &args)
{
  std::string cmd = std::string(GCX_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json structured(Args args)
{
  args.push_back("--format");
  args.push_back("structured");
  auto r = run(args);
  EXPECT_EQ(r.exit_code, 0) << r.err;
  return json::parse(r.out);
}

} // namespace

TEST(Cli, UsageAndUnknowns)
{
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_NE(run({}).err.find("usage: gcx"), std::string::npos);
  EXPECT_EQ(run({"--help"}).exit_code, 0);
  auto frob = run({"frob"});
  EXPECT_EQ(frob.exit_code, 2);
  EXPECT_NE(frob.err.find("unknown verb 'frob'"), std::string::npos);
  EXPECT_EQ(run({"factors", "--word", "fib", "--n", "3", "--bogus"}).exit_code, 2);
  EXPECT_EQ(run({"factors", "--word", "fib"}).exit_code, 2);
  EXPECT_EQ(run({"factors", "--word", "fib", "--n", "0"}).exit_code, 2);
  EXPECT_EQ(run({"factors", "--word", "fib", "--n", "x"}).exit_code, 2);
  EXPECT_EQ(run({"factors", "--word", "nope", "--n", "3"}).exit_code, 2);
  EXPECT_EQ(run({"factors", "--word", "fib", "--n", "3", "--format", "xml"})
                .exit_code,
            2);
}

TEST(Cli, OrbitsExample)
{
  auto cmd = cli::parse_command(
      {"orbits", "--word", "fib", "--n", "4", "--group", "(1,3,2,4)"});
  EXPECT_EQ(cmd.verb, "orbits");
  EXPECT_EQ(cmd.word_spec, "fib");
  EXPECT_EQ(cmd.n_lo, 4u);
  EXPECT_EQ(cmd.group_spec, "(1,3,2,4)");
  auto doc = structured({"orbits", "--word", "fib", "--n", "4", "--group",
                         "(1,3,2,4)"});
  EXPECT_EQ(doc["kind"], "orbits");
  EXPECT_EQ(doc["count"], 2);
  EXPECT_EQ(doc["abelian_transitive"], true);
  EXPECT_EQ(doc["library_version"], library_version);
  auto back = orbits_from_document(doc);
  EXPECT_EQ(back.classes, (WordClasses{{"0010", "0100"}, {"0101", "1001", "1010"}}));

  auto text = run({"orbits", "--word", "fib", "--n", "4", "--group", "(1,2,3,4)"});
  EXPECT_EQ(text.exit_code, 0);
  EXPECT_EQ(text.out.rfind("# gcx 1.0.0: orbits", 0), 0u);
}

TEST(Cli, FactorsAndEpsilon)
{
  auto doc = structured({"factors", "--word", "tm", "--n", "4"});
  EXPECT_EQ(doc["count"], 10);
  EXPECT_EQ(factor_set_from_document(doc), factors(WordSource::thue_morse(), 4));
  auto eps = structured({"epsilon", "--n", "6", "--group", "(1,2)(3,4)"});
  EXPECT_EQ(eps["epsilon"], 4);
}

TEST(Cli, TableAndVerify)
{
  auto t = structured({"complexity-table", "--word", "tm", "--n", "1..6",
                       "--groups", "sym"});
  auto table = table_from_document(t);
  ASSERT_EQ(table.rows.size(), 6u);
  EXPECT_EQ(table.rows[3].p, 3u);

  auto pass = run({"verify-theorem1", "--word", "fib", "--n", "1..20",
                   "--groups", "id"});
  EXPECT_EQ(pass.exit_code, 0);
  EXPECT_NE(pass.out.find("PASS"), std::string::npos);

  auto inapplicable = run({"verify-theorem1", "--word", "periodic:01", "--n",
                           "1..5", "--groups", "id"});
  EXPECT_EQ(inapplicable.exit_code, 2);
  EXPECT_NE(inapplicable.err.find("not aperiodic"), std::string::npos);

  EXPECT_EQ(run({"verify-theorem1", "--word", "fib", "--n", "5..2", "--groups",
                 "id"})
                .exit_code,
            2);
  EXPECT_EQ(run({"complexity-table", "--word", "fib", "--n", "1..5",
                 "--groups", "abc:1,1,1"})
                .exit_code,
            2);
}

TEST(Cli, CsvOutput)
{
  auto r = run({"complexity-table", "--word", "fib", "--n", "1..4", "--groups",
                "cyc", "--format", "csv"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("n,group,epsilon,p,slack\n"), std::string::npos);
  for (auto const &line : {"\n2,cyc,1,2,0\n", "\n4,cyc,1,3,1\n"})
    EXPECT_NE(r.out.find(line), std::string::npos) << r.out;
}

TEST(Cli, GroupFile)
{
  auto path = std::filesystem::temp_directory_path() / "gcx_groups_test.txt";
  {
    std::ofstream f(path);
    f << "# groups for the Fibonacci word\n1 id\n2 (1,2)\n3 abc:1,1,1\n";
  }
  auto r = structured({"complexity-table", "--word", "fib", "--n", "1..3",
                       "--groups", "file:" + path.string()});
  EXPECT_EQ(r["rows"][2]["group"], "abc:1,1,1");
  EXPECT_EQ(run({"complexity-table", "--word", "fib", "--n", "1..4", "--groups",
                 "file:" + path.string()})
                .exit_code,
            2);
  {
    std::ofstream f(path);
    f << "1 id\n1 sym\n";
  }
  EXPECT_EQ(run({"complexity-table", "--word", "fib", "--n", "1..1",
                 "--groups", "file:" + path.string()})
                .exit_code,
            2);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"complexity-table", "--word", "fib", "--n", "1..1",
                 "--groups", "file:" + path.string()})
                .exit_code,
            2);
}

TEST(Cli, Witnesses)
{
  auto w = structured({"witness", "--word", "fib", "--n", "4", "--abelian", "Z4"});
  EXPECT_EQ(w["classes"], 2);
  EXPECT_EQ(w["passed"], true);
  EXPECT_EQ(run({"witness", "--word", "fib", "--n", "3", "--abelian", "[2,2]"})
                .exit_code,
            2);
  EXPECT_EQ(run({"witness", "--word", "tm", "--n", "4", "--abelian", "Z2"})
                .exit_code,
            2);

  auto c = structured({"conjugate-witness", "--word", "fib", "--perm",
                       "(1,2,3,4,5)", "--n", "7"});
  EXPECT_EQ(c["classes"], 4);
  auto fail = run({"conjugate-witness", "--word", "fib", "--perm",
                   "(1,2,3)(4,5,6)(7,8)"});
  EXPECT_EQ(fail.exit_code, 1);
  EXPECT_EQ(run({"conjugate-witness", "--word", "fib", "--perm",
                 "(1,2,3)(4,5,6)"})
                .exit_code,
            2);
}

TEST(Cli, ChristoffelScanFineWilf)
{
  auto c = run({"christoffel", "--w", "010010"});
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_NE(c.out.find("0 0 1 0 0 1 0 1\n"), std::string::npos);

  auto big = run({"scan-conjugates", "--word", "fib", "--n", "12", "--group",
                  "(1,2,3)(4,5,6)"});
  EXPECT_EQ(big.exit_code, 2);
  auto scan = structured({"scan-conjugates", "--word", "fib", "--n", "6",
                          "--group", "(1,2,3)(4,5,6)"});
  EXPECT_EQ(scan["min_classes"], 4);
  EXPECT_EQ(scan["conjugates"], 20);

  auto fw = structured({"fine-wilf", "--word", "fib", "--n", "8"});
  EXPECT_EQ(fw["cycles"], "(1,6,3,8,5,2,7,4)");
  EXPECT_EQ(run({"fine-wilf", "--word", "fib", "--n", "3"}).exit_code, 2);
}

TEST(Cli, Deterministic)
{
  std::vector<Args> commands{
      {"orbits", "--word", "fib", "--n", "7", "--group", "(1,2)(3,4,5)"},
      {"complexity-table", "--word", "sturmian:(1,2)", "--n", "1..10",
       "--groups", "cyc"},
      {"witness", "--word", "fib", "--n", "9", "--abelian", "Z2xZ3xZ4"}};
  for (auto const &args : commands)
    for (auto fmt : {"text", "csv", "structured"}) {
      auto a = args;
      a.insert(a.end(), {"--format", fmt});
      auto first = run(a);
      EXPECT_EQ(first.exit_code, 0);
      EXPECT_EQ(run(a).out, first.out);
    }
}

TEST(Binary, ExitCodesAndOutput)
{
  auto [ok, out] = shell("orbits --word fib --n 4 --group '(1,3,2,4)'");
  EXPECT_EQ(ok, 0);
  EXPECT_EQ(out, run({"orbits", "--word", "fib", "--n", "4", "--group",
                      "(1,3,2,4)"})
                     .out);
  EXPECT_EQ(shell("").first, 2);
  EXPECT_EQ(shell("frob").first, 2);
  EXPECT_EQ(shell("conjugate-witness --word fib --perm '(1,2,3)(4,5,6)(7,8)'")
                .first,
            1);
  EXPECT_EQ(shell("scan-conjugates --word fib --n 12 --group '(1,2,3)(4,5,6)'")
                .first,
            2);
  auto [code, doc] = shell("witness --word fib --n 4 --abelian Z4 --format structured");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(json::parse(doc)["classes"], 2);
}
