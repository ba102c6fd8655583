#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ncause/core.hpp"
#include "ncause/desc.hpp"

namespace ncause {

struct Span {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity;
  std::string message;
  Span span;
};

std::string formatDiagnostic(const Diagnostic& d,
                             const std::string& filename = "");

// ---------------------------------------------------------------------------
// Syntax tree. Structural equality (sameSource and friends) ignores spans.

struct NameRef {
  std::string text;
  Span span;
};

struct StyleAttrAst {
  NameRef key;
  std::string value;
};

struct CaseAst {
  NameRef name;
  std::vector<StyleAttrAst> style;
};

struct ValuesDeclAst {
  NameRef name;
  std::vector<CaseAst> cases;
};

struct DescAst;

struct PrimaryAst {
  enum class Form { Bare, Call, CountCall, Paren };
  Form form = Form::Bare;
  NameRef keyword;                 // builder keyword, empty for Paren
  std::optional<std::size_t> count;  // CountCall only
  std::vector<NameRef> names;      // Call/CountCall arguments
  std::vector<DescAst> inner;      // Paren: exactly one element
  Span span;
};

struct ModifierAst {
  enum class Type { Inhib, Unless, KindMod };
  Type type = Type::Inhib;
  std::vector<NameRef> names;  // Inhib/Unless
  Kind kind = Kind::Law;       // KindMod
  Span span;
};

struct AtomAst {
  PrimaryAst primary;
  std::vector<ModifierAst> modifiers;
};

struct TermAst {
  std::vector<AtomAst> atoms;  // joined by &&
};

struct DescAst {
  std::vector<TermAst> terms;  // joined by ||
};

struct NeuronAst {
  NameRef name;
  DescAst desc;
};

struct GraphDeclAst {
  NameRef name;
  std::optional<NameRef> domainName;  // absent: boolean
  std::vector<NeuronAst> neurons;
  std::vector<NameRef> outputs;
};

struct DiagramDeclAst {
  NameRef name;
  NameRef graphName;
  std::vector<NameRef> args;
};

using ItemAst = std::variant<ValuesDeclAst, GraphDeclAst, DiagramDeclAst>;

struct SourceFile {
  std::vector<ItemAst> items;
};

bool sameSource(const SourceFile& a, const SourceFile& b);

// ---------------------------------------------------------------------------
// Front-end operations

struct ParseResult {
  std::optional<SourceFile> file;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return file.has_value(); }
};

/// Parses UTF-8 DSL text. Failures yield at least one error diagnostic with
/// a span inside the input.
ParseResult parse(std::string_view text);

/// Canonical concrete syntax for a parse tree; reparses to a structurally
/// equal SourceFile.
std::string printSource(const SourceFile& file);

struct LoweredFile {
  std::vector<std::pair<std::string, ValueDomain>> domains;
  std::vector<std::pair<std::string, Graph>> graphs;
  std::vector<std::pair<std::string, Diagram>> diagrams;
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
  const ValueDomain* domain(const std::string& name) const;
  const Graph* graph(const std::string& name) const;
  const Diagram* diagram(const std::string& name) const;
};

/// Resolves builders against the registry, validates graphs, and binds
/// diagram inputs. Every failure carries a span.
LoweredFile lower(const SourceFile& file,
                  const BuilderRegistry& registry = BuilderRegistry::standard());

LoweredFile loadString(std::string_view text,
                       const BuilderRegistry& registry =
                           BuilderRegistry::standard());

/// Reads, parses, and lowers a .nd file. A missing or unreadable file is
/// reported as a diagnostic.
LoweredFile loadFile(const std::string& path,
                     const BuilderRegistry& registry =
                         BuilderRegistry::standard());

// ---------------------------------------------------------------------------
// Shipped examples

struct CorpusFile {
  std::string name;
  std::string text;
};

/// The .nd example files shipped with the repository, embedded at build
/// time from corpus/.
const std::vector<CorpusFile>& corpus();

}  // namespace ncause
