#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncause/dot.hpp"
#include "testutil.hpp"

using namespace ncause;
using test::CliResult;
using test::corpusPath;
using test::runCli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "") {
    path = "/tmp/ncause_test_" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("causes subcommand reproduces the transcripts") {
  CliResult r =
      runCli("causes " + corpusPath("orders.nd") + " --diagram majorOrders");
  CHECK(r.exitCode == 0);
  CHECK(r.output == "Maj:True ==> Pvt:True\n");
}

TEST_CASE("eval prints one literal per neuron in topological order") {
  CliResult all =
      runCli("eval " + corpusPath("trump.nd") + " --diagram trump");
  CHECK(all.exitCode == 0);
  CHECK(all.output == "Gen:True\nMaj:True\nMajE:False\nPvt:True\n");

  CliResult one = runCli("eval " + corpusPath("orders.nd") +
                         " --diagram majorOrders --neuron Pvt");
  CHECK(one.exitCode == 0);
  CHECK(one.output == "Pvt:True\n");
}

TEST_CASE("equal exits 0 on True and 1 on False") {
  CliResult eq = runCli("equal " + corpusPath("trump.nd") +
                        " --effects trumpGraph bothGraph");
  CHECK(eq.exitCode == 0);
  CHECK(eq.output == "True\n");

  TempFile f("unequal.nd", R"(
graph a { X: input; Y: stim(X); outputs: Y; }
graph b { X: input; Y: unstim(X); outputs: Y; }
)");
  CliResult ne = runCli("equal " + f.path + " --effects a b");
  CHECK(ne.exitCode == 1);
  CHECK(ne.output == "False\n");

  CliResult nc = runCli("equal " + f.path + " --causes a b");
  CHECK(nc.exitCode == 1);
  CHECK(nc.output == "False\n");
}

TEST_CASE("check prints diagnostics on stderr only") {
  TempFile good("good.nd", "graph g { A: input; outputs: A; }\n");
  TempFile errFile("stderr.txt");
  CliResult ok = runCli("check " + good.path, errFile.path);
  CHECK(ok.exitCode == 0);
  CHECK(ok.output.empty());
  CHECK(slurp(errFile.path).empty());

  TempFile warn("warn.nd",
                "graph g { A: input; Lost: input; B: stim(A); outputs: B; }\n");
  CliResult warned = runCli("check " + warn.path, errFile.path);
  CHECK(warned.exitCode == 0);
  CHECK(warned.output.empty());
  CHECK(slurp(errFile.path).find("warning") != std::string::npos);

  TempFile bad("bad.nd", "graph g { A: stim(Q); outputs: A; }\n");
  CliResult failed = runCli("check " + bad.path, errFile.path);
  CHECK(failed.exitCode == 2);
  CHECK(failed.output.empty());
  std::string err = slurp(errFile.path);
  CHECK(err.find("error") != std::string::npos);
  CHECK(err.find(":1:") != std::string::npos);
}

TEST_CASE("the result payload stays on stdout with stderr silent") {
  TempFile errFile("payload_err.txt");
  CliResult r = runCli(
      "causes " + corpusPath("trump.nd") + " --diagram notTrumped",
      errFile.path);
  CHECK(r.exitCode == 0);
  CHECK(r.output == "Gen:False & Maj:True ==> Pvt:True\n");
  CHECK(slurp(errFile.path).empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(runCli("").exitCode == 2);
  CHECK(runCli("explode").exitCode == 2);
  CHECK(runCli("causes").exitCode == 2);
  CHECK(runCli("causes " + corpusPath("orders.nd")).exitCode == 2);
  CHECK(runCli("eval " + corpusPath("orders.nd") + " --diagram nope")
            .exitCode == 2);
  CHECK(runCli("causes /nonexistent.nd --diagram d").exitCode == 2);
  CHECK(runCli("equal " + corpusPath("trump.nd")).exitCode == 2);
  CHECK(runCli("dot " + corpusPath("trump.nd")).exitCode == 2);
  CHECK(runCli("dot " + corpusPath("trump.nd") +
               " --graph trumpGraph --diagram trump")
            .exitCode == 2);
  CHECK(runCli("eval " + corpusPath("orders.nd") +
               " --diagram majorOrders --neuron Ghost")
            .exitCode == 2);
}

TEST_CASE("dot writes to stdout or a file") {
  CliResult out =
      runCli("dot " + corpusPath("trump.nd") + " --diagram trump");
  CHECK(out.exitCode == 0);
  std::string error;
  auto parsed = test::parseDot(out.output, &error);
  REQUIRE_MESSAGE(parsed.has_value(), error);
  CHECK(parsed->nodes.size() == 4);

  TempFile target("dot_out.dot");
  CliResult filed = runCli("dot " + corpusPath("trump.nd") +
                           " --graph trumpGraph -o " + target.path);
  CHECK(filed.exitCode == 0);
  CHECK(filed.output.empty());
  CHECK(slurp(target.path) == ncause::dotGraph(test::trumpGraph(),
                                               "trumpGraph"));
}

TEST_CASE("all-causes prints the bracketed list") {
  CliResult r = runCli("all-causes " + corpusPath("party.nd") + " --graph party");
  CHECK(r.exitCode == 0);
  CHECK(r.output ==
        "[John:False ==> Matt:False,John:True ==> Matt:True]\n");
}

TEST_CASE("effects honors the force flag plumbing") {
  CliResult r = runCli("effects " + corpusPath("orders.nd") +
                       " --graph orders --force");
  CHECK(r.exitCode == 0);
  CHECK(test::lines(r.output).size() == 4);
}
