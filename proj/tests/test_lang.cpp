#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ncause/cause.hpp"
#include "ncause/eval.hpp"
#include "ncause/lang.hpp"
#include "testutil.hpp"

using namespace ncause;
using test::B;

namespace {

bool hasError(const LoweredFile& lf, const std::string& needle) {
  return std::any_of(lf.diagnostics.begin(), lf.diagnostics.end(),
                     [&](const Diagnostic& d) {
                       return d.severity == Severity::Error &&
                              d.message.find(needle) != std::string::npos;
                     });
}

int countLines(std::string_view text) {
  return 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("the trump graph parses and lowers") {
  const char* src = R"(
graph trumpGraph {
  Gen: input;
  Maj: input;
  MajE: stim(Maj) inhib(Gen);
  Pvt: stim(Gen, MajE);
  outputs: Pvt;
}
diagram trump = trumpGraph(true, true);
)";
  LoweredFile lf = loadString(src);
  REQUIRE(lf.ok());
  const Graph* g = lf.graph("trumpGraph");
  REQUIRE(g != nullptr);
  CHECK(g->neurons().size() == 4);
  const Neuron& majE = g->neuronIn("MajE");
  CHECK(majE.desc.identity() == "inhib(stim(Maj);Gen)");
  CHECK(majE.desc.edges()[0].source == "Maj");
  CHECK(majE.desc.edges()[1].source == "Gen");
  CHECK(*g == test::trumpGraph());

  const Diagram* trump = lf.diagram("trump");
  REQUIRE(trump != nullptr);
  CHECK(trump->inputs() == std::vector<Value>{B(true), B(true)});
}

TEST_CASE("composition and sugar lower to the builder algebra") {
  const char* src = R"(
graph party {
  John: input;
  Sue: ifnot(John);
  Karen: if_(Sue);
  Brian: stim(Karen) || unstim(Sue);
  Matt: ifall(John, Brian);
  outputs: Matt;
}
)";
  LoweredFile lf = loadString(src);
  REQUIRE(lf.ok());
  const Graph* g = lf.graph("party");
  REQUIRE(g != nullptr);
  CHECK(g->neuronIn("Brian").desc.identity() ==
        "or(stim(Karen),unstim(Sue))");
  CHECK(g->neuronIn("Matt").desc.identity() == "thick(2;John,Brian)");
  CHECK(g->neuronIn("Sue").desc.identity() == "unstim(John)");
  CHECK(*g == test::partyGraph());
}

TEST_CASE("kind and unless modifiers") {
  const char* src = R"(
graph boulderGraph {
  Boulder: input;
  Duck: stim(Boulder) kind action;
  Dead: stim(Boulder) unless(Duck);
  outputs: Dead;
}
)";
  LoweredFile lf = loadString(src);
  REQUIRE(lf.ok());
  const Graph* g = lf.graph("boulderGraph");
  CHECK(g->neuronIn("Duck").desc.kind() == Kind::Action);
  CHECK(g->neuronIn("Dead").desc.identity() == "inhib(stim(Boulder);Duck)");
}

TEST_CASE("operator precedence: && binds tighter than ||") {
  const char* src = R"(
graph g {
  A: input;
  B: input;
  C: input;
  X: stim(A) && stim(B) || stim(C);
  outputs: X;
}
)";
  ParseResult parsed = parse(src);
  REQUIRE(parsed.ok());
  const auto& graph = std::get<GraphDeclAst>(parsed.file->items[0]);
  const DescAst& desc = graph.neurons[3].desc;
  REQUIRE(desc.terms.size() == 2);     // two disjuncts
  CHECK(desc.terms[0].atoms.size() == 2);  // (a && b)
  CHECK(desc.terms[1].atoms.size() == 1);  // c

  LoweredFile lf = loadString(src);
  REQUIRE(lf.ok());
  CHECK(lf.graph("g")->neuronIn("X").desc.identity() ==
        "or(and(stim(A),stim(B)),stim(C))");
}

TEST_CASE("parenthesized descriptions regroup") {
  const char* src = R"(
graph g {
  A: input;
  B: input;
  C: input;
  X: stim(A) && (stim(B) || stim(C));
  outputs: X;
}
)";
  LoweredFile lf = loadString(src);
  REQUIRE(lf.ok());
  CHECK(lf.graph("g")->neuronIn("X").desc.identity() ==
        "and(stim(A),or(stim(B),stim(C)))");
}

TEST_CASE("values declaration with styles") {
  const char* src = R"(
values Order { None, Charge [fillcolor="palegreen"], Retreat [fillcolor="orangered"] }
graph g over Order {
  A: input;
  B: byrank(A);
  outputs: B;
}
diagram d = g(Charge);
)";
  LoweredFile lf = loadString(src);
  REQUIRE(lf.ok());
  const ValueDomain* order = lf.domain("Order");
  REQUIRE(order != nullptr);
  CHECK(order->size() == 3);
  CHECK(order->caseStyle(1) == Style{{"fillcolor", "palegreen"}});
  CHECK(lf.diagram("d")->inputs()[0] == order->value(1));
}

TEST_CASE("const builder takes a case of the graph's domain") {
  LoweredFile lf = loadString(
      "graph g { K: const(True); Out: stim(K); outputs: Out; }\n"
      "diagram d = g();");
  REQUIRE(lf.ok());
  CHECK(formatCauses(causes(Diagram(*lf.graph("g"), {}))) ==
        "True ==> Out:True");
  // a zero-input diagram binds the empty vector
  REQUIRE(lf.diagram("d") != nullptr);
  CHECK(lf.diagram("d")->inputs().empty());
  CHECK(hasError(loadString("graph g { K: const(Maybe); outputs: K; }"),
                 "Maybe"));
}

TEST_CASE("diagram arity and value errors carry spans") {
  LoweredFile lf = loadString(R"(
graph trump {
  Gen: input;
  Maj: input;
  Pvt: stim(Gen, Maj);
  outputs: Pvt;
}
diagram d = trump(true);
)");
  CHECK_FALSE(lf.ok());
  CHECK(hasError(lf, "expected 2"));
  CHECK(lf.diagram("d") == nullptr);

  CHECK(hasError(loadString("graph g { A: input; outputs: A; }\n"
                            "diagram d = g(Charge);"),
                 "Charge"));
}

TEST_CASE("lowering errors") {
  CHECK(hasError(loadString("graph g { A: zap(A); outputs: A; }"),
                 "unknown builder 'zap'"));
  CHECK(hasError(loadString("graph g { A: stim(Q); outputs: Q; }"),
                 "unknown neuron 'Q'"));
  CHECK(hasError(loadString("graph g { A: input; A: input; outputs: A; }"),
                 "declared twice"));
  CHECK(hasError(loadString("graph g { A: stim(A); outputs: A; }"), "cycle"));
  CHECK(hasError(loadString("graph g over Cheese { A: input; outputs: A; }"),
                 "Cheese"));
  CHECK(hasError(loadString("diagram d = ghost(true);"), "unknown graph"));
  CHECK(hasError(loadString("graph g { A: input; outputs: A; }\n"
                            "graph g { A: input; outputs: A; }"),
                 "declared twice"));
  // domain checks on builders
  CHECK(hasError(loadString("values V { A, B }\n"
                            "graph g over V { X: input; Y: thick(1; X); "
                            "outputs: Y; }"),
                 "boolean"));
  CHECK(hasError(loadString("values V { A, B }\n"
                            "graph g over V { X: input; Y: unstim(X); "
                            "outputs: Y; }"),
                 "boolean"));
  // builder shape misuse
  CHECK(hasError(loadString("graph g { A: input(); outputs: A; }"),
                 "takes no arguments"));
  CHECK(hasError(loadString("graph g { A: input; B: stim; outputs: B; }"),
                 "takes a list"));
  CHECK(hasError(loadString("graph g { A: input; B: stim(); outputs: B; }"),
                 "takes a list"));
  CHECK(hasError(loadString("graph g { A: input; B: stim(A) unless(A, A); "
                            "outputs: B; }"),
                 "exactly one"));
}

TEST_CASE("reserved words are rejected as names") {
  LoweredFile lf = loadString("graph g { stim: input; outputs: stim; }");
  CHECK_FALSE(lf.ok());
  CHECK(hasError(lf, "reserved word"));
  CHECK(hasError(loadString("graph outputs { A: input; outputs: A; }"),
                 "reserved word"));
}

TEST_CASE("syntax errors produce spans inside the text") {
  const char* bad[] = {
      "graph g {",
      "graph g { A: input outputs: A; }",
      "values V { }",
      "graph g { A: input; outputs: A; } diagram d = g(true)",
      "wibble",
      "graph g { A: input; outputs: A; } diagram",
      "values V { A [x=3] }",
  };
  for (const char* src : bad) {
    ParseResult r = parse(src);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    for (const Diagnostic& d : r.diagnostics) {
      CHECK(d.severity == Severity::Error);
      CHECK(d.span.line >= 1);
      CHECK(d.span.line <= countLines(src));
      CHECK(d.span.col >= 1);
    }
  }
}

TEST_CASE("unreachable neurons warn with the declaration span") {
  LoweredFile lf = loadString(
      "graph g { A: input; Lost: input; B: stim(A); outputs: B; }");
  CHECK(lf.ok());  // warnings only
  REQUIRE(lf.diagnostics.size() == 1);
  CHECK(lf.diagnostics[0].severity == Severity::Warning);
  CHECK(lf.diagnostics[0].message.find("Lost") != std::string::npos);
  CHECK(lf.diagnostics[0].span.col == 21);
  CHECK_FALSE(lf.graph("g")->contains("Lost"));
}

TEST_CASE("corpus files parse, lower, and round-trip") {
  REQUIRE_FALSE(corpus().empty());
  for (const CorpusFile& file : corpus()) {
    CAPTURE(file.name);
    ParseResult first = parse(file.text);
    REQUIRE(first.ok());
    LoweredFile lowered = lower(*first.file);
    CHECK(lowered.ok());
    CHECK(lowered.diagnostics.empty());

    std::string printed = printSource(*first.file);
    ParseResult second = parse(printed);
    REQUIRE(second.ok());
    CHECK(sameSource(*first.file, *second.file));
  }
}

TEST_CASE("corpus files match the shipped .nd files on disk") {
  for (const CorpusFile& file : corpus()) {
    CAPTURE(file.name);
    std::ifstream in(test::corpusPath(file.name), std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == file.text);
  }
}

TEST_CASE("corpus content: party declares John as the only input") {
  const CorpusFile* party = nullptr;
  for (const CorpusFile& f : corpus()) {
    if (f.name == "party.nd") party = &f;
  }
  REQUIRE(party != nullptr);
  LoweredFile lf = loadString(party->text);
  REQUIRE(lf.ok());
  auto inputs = lf.graph("party")->inputNeurons();
  REQUIRE(inputs.size() == 1);
  CHECK(inputs[0]->name == "John");
}

TEST_CASE("corpus content: the wake variant blames Wake") {
  const CorpusFile* wake = nullptr;
  for (const CorpusFile& f : corpus()) {
    if (f.name == "wake.nd") wake = &f;
  }
  REQUIRE(wake != nullptr);
  LoweredFile lf = loadString(wake->text);
  REQUIRE(lf.ok());
  CHECK(lf.graph("wakeGraph")->neuronIn("Gen").desc.kind() == Kind::Law);
  CHECK(formatCauses(causes(*lf.diagram("wake"))) == "Wake:True ==> Pvt:True");
}

TEST_CASE("corpus content: orders reproduces both scenarios") {
  const CorpusFile* orders = nullptr;
  for (const CorpusFile& f : corpus()) {
    if (f.name == "orders.nd") orders = &f;
  }
  REQUIRE(orders != nullptr);
  LoweredFile lf = loadString(orders->text);
  REQUIRE(lf.ok());
  CHECK(stateIn("Pvt", *lf.diagram("majorOrders")) == B(true));
  CHECK(formatCauses(causes(*lf.diagram("majorOrders"))) ==
        "Maj:True ==> Pvt:True");
  CHECK(formatCauses(causes(*lf.diagram("bothOrder"))) ==
        "Gen:True | Maj:True ==> Pvt:True");
}

TEST_CASE("custom builders extend the surface language") {
  BuilderRegistry reg = BuilderRegistry::standard();
  reg.add("nand", BuilderShape::Names,
          [](const ValueDomain& d, const BuilderCall& c) {
            Description all = thick(d, c.names.size(), c.names);
            FiringFunction f = extend(
                all,
                [d](const Value& v, int) { return d.value(v.index() ? 0 : 1); },
                [](std::span<const Value>) { return 0; });
            return Description(Kind::Law, f, all.style(), all.edges(),
                               "nand(" + c.names[0] + "," + c.names[1] + ")");
          });
  LoweredFile lf = loadString(
      "graph g { A: input; B: input; C: nand(A, B); outputs: C; }", reg);
  REQUIRE(lf.ok());
  CHECK(stateIn("C", Diagram(*lf.graph("g"), {B(true), B(true)})) == B(false));
  CHECK(stateIn("C", Diagram(*lf.graph("g"), {B(false), B(true)})) == B(true));
}

TEST_CASE("loadFile reports unreadable paths") {
  LoweredFile lf = loadFile("/nonexistent/path.nd");
  CHECK_FALSE(lf.ok());
  REQUIRE_FALSE(lf.diagnostics.empty());
  CHECK(lf.diagnostics[0].message.find("cannot read") != std::string::npos);
}

TEST_CASE("diagnostic formatting") {
  Diagnostic d{Severity::Error, "boom", {3, 7}};
  CHECK(formatDiagnostic(d, "f.nd") == "f.nd:3:7: error: boom");
  Diagnostic w{Severity::Warning, "meh", {1, 1}};
  CHECK(formatDiagnostic(w) == "1:1: warning: meh");
}
