#include "ncause/lang.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ncause/error.hpp"

namespace ncause {

std::string formatDiagnostic(const Diagnostic& d, const std::string& filename) {
  std::string out;
  if (!filename.empty()) out += filename + ":";
  out += std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + ": ";
  out += d.severity == Severity::Error ? "error: " : "warning: ";
  out += d.message;
  return out;
}

// ---------------------------------------------------------------------------
// Structural equality (span-insensitive)

namespace {

bool sameName(const NameRef& a, const NameRef& b) { return a.text == b.text; }

bool sameNames(const std::vector<NameRef>& a, const std::vector<NameRef>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), sameName);
}

bool sameDesc(const DescAst& a, const DescAst& b);

bool samePrimary(const PrimaryAst& a, const PrimaryAst& b) {
  if (a.form != b.form) return false;
  if (a.form == PrimaryAst::Form::Paren) {
    return sameDesc(a.inner.front(), b.inner.front());
  }
  return sameName(a.keyword, b.keyword) && a.count == b.count &&
         sameNames(a.names, b.names);
}

bool sameModifier(const ModifierAst& a, const ModifierAst& b) {
  return a.type == b.type && a.kind == b.kind && sameNames(a.names, b.names);
}

bool sameAtom(const AtomAst& a, const AtomAst& b) {
  return samePrimary(a.primary, b.primary) &&
         std::equal(a.modifiers.begin(), a.modifiers.end(),
                    b.modifiers.begin(), b.modifiers.end(), sameModifier);
}

bool sameDesc(const DescAst& a, const DescAst& b) {
  return std::equal(a.terms.begin(), a.terms.end(), b.terms.begin(),
                    b.terms.end(), [](const TermAst& x, const TermAst& y) {
                      return std::equal(x.atoms.begin(), x.atoms.end(),
                                        y.atoms.begin(), y.atoms.end(),
                                        sameAtom);
                    });
}

bool sameItem(const ItemAst& a, const ItemAst& b) {
  if (a.index() != b.index()) return false;
  if (const auto* va = std::get_if<ValuesDeclAst>(&a)) {
    const auto& vb = std::get<ValuesDeclAst>(b);
    return sameName(va->name, vb.name) &&
           std::equal(va->cases.begin(), va->cases.end(), vb.cases.begin(),
                      vb.cases.end(), [](const CaseAst& x, const CaseAst& y) {
                        return sameName(x.name, y.name) &&
                               std::equal(
                                   x.style.begin(), x.style.end(),
                                   y.style.begin(), y.style.end(),
                                   [](const StyleAttrAst& p,
                                      const StyleAttrAst& q) {
                                     return sameName(p.key, q.key) &&
                                            p.value == q.value;
                                   });
                      });
  }
  if (const auto* ga = std::get_if<GraphDeclAst>(&a)) {
    const auto& gb = std::get<GraphDeclAst>(b);
    if (!sameName(ga->name, gb.name)) return false;
    if (ga->domainName.has_value() != gb.domainName.has_value()) return false;
    if (ga->domainName && !sameName(*ga->domainName, *gb.domainName)) {
      return false;
    }
    return sameNames(ga->outputs, gb.outputs) &&
           std::equal(ga->neurons.begin(), ga->neurons.end(),
                      gb.neurons.begin(), gb.neurons.end(),
                      [](const NeuronAst& x, const NeuronAst& y) {
                        return sameName(x.name, y.name) &&
                               sameDesc(x.desc, y.desc);
                      });
  }
  const auto& da = std::get<DiagramDeclAst>(a);
  const auto& db = std::get<DiagramDeclAst>(b);
  return sameName(da.name, db.name) && sameName(da.graphName, db.graphName) &&
         sameNames(da.args, db.args);
}

}  // namespace

bool sameSource(const SourceFile& a, const SourceFile& b) {
  return std::equal(a.items.begin(), a.items.end(), b.items.begin(),
                    b.items.end(), sameItem);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

const std::set<std::string>& reservedWords() {
  static const std::set<std::string> words = {
      "values", "graph", "diagram", "over",  "outputs", "input", "const",
      "stim",   "unstim", "thick",  "xor",   "byrank",  "inhib", "kind",
      "action", "law",    "if_",    "ifnot", "ifany",   "ifall", "unless"};
  return words;
}

struct Token {
  enum class Type {
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Eq,
    AndAnd,
    OrOr,
    End,
  };
  Type type;
  std::string text;
  std::size_t number = 0;
  Span span;
};

const char* tokenName(Token::Type t) {
  switch (t) {
    case Token::Type::Ident: return "identifier";
    case Token::Type::Number: return "number";
    case Token::Type::String: return "string";
    case Token::Type::LBrace: return "'{'";
    case Token::Type::RBrace: return "'}'";
    case Token::Type::LParen: return "'('";
    case Token::Type::RParen: return "')'";
    case Token::Type::LBracket: return "'['";
    case Token::Type::RBracket: return "']'";
    case Token::Type::Comma: return "','";
    case Token::Type::Semi: return "';'";
    case Token::Type::Colon: return "':'";
    case Token::Type::Eq: return "'='";
    case Token::Type::AndAnd: return "'&&'";
    case Token::Type::OrOr: return "'||'";
    case Token::Type::End: return "end of input";
  }
  return "token";
}

/// Thrown after recording a diagnostic to abort the parse.
struct ParseBail {};

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<Diagnostic>& diagnostics)
      : text_(text), diagnostics_(diagnostics) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skipTrivia();
      Span span{line_, col_};
      if (pos_ >= text_.size()) {
        tokens.push_back({Token::Type::End, "", 0, span});
        return tokens;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          ident += take();
        }
        tokens.push_back({Token::Type::Ident, std::move(ident), 0, span});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t n = 0;
        std::string digits;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          digits += take();
        }
        if (digits.size() > 9) bail(span, "number literal too large");
        n = std::stoull(digits);
        tokens.push_back({Token::Type::Number, digits, n, span});
        continue;
      }
      if (c == '"') {
        take();
        std::string value;
        while (true) {
          if (pos_ >= text_.size() || text_[pos_] == '\n') {
            bail(span, "unterminated string literal");
          }
          char d = take();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= text_.size()) bail(span, "unterminated string literal");
            char e = take();
            if (e == '"' || e == '\\') {
              value += e;
            } else {
              bail(span, std::string("unsupported escape '\\") + e + "'");
            }
            continue;
          }
          value += d;
        }
        tokens.push_back({Token::Type::String, std::move(value), 0, span});
        continue;
      }
      switch (c) {
        case '{': take(); tokens.push_back({Token::Type::LBrace, "{", 0, span}); continue;
        case '}': take(); tokens.push_back({Token::Type::RBrace, "}", 0, span}); continue;
        case '(': take(); tokens.push_back({Token::Type::LParen, "(", 0, span}); continue;
        case ')': take(); tokens.push_back({Token::Type::RParen, ")", 0, span}); continue;
        case '[': take(); tokens.push_back({Token::Type::LBracket, "[", 0, span}); continue;
        case ']': take(); tokens.push_back({Token::Type::RBracket, "]", 0, span}); continue;
        case ',': take(); tokens.push_back({Token::Type::Comma, ",", 0, span}); continue;
        case ';': take(); tokens.push_back({Token::Type::Semi, ";", 0, span}); continue;
        case ':': take(); tokens.push_back({Token::Type::Colon, ":", 0, span}); continue;
        case '=': take(); tokens.push_back({Token::Type::Eq, "=", 0, span}); continue;
        case '&':
          take();
          if (pos_ < text_.size() && text_[pos_] == '&') {
            take();
            tokens.push_back({Token::Type::AndAnd, "&&", 0, span});
            continue;
          }
          bail(span, "expected '&&'");
        case '|':
          take();
          if (pos_ < text_.size() && text_[pos_] == '|') {
            take();
            tokens.push_back({Token::Type::OrOr, "||", 0, span});
            continue;
          }
          bail(span, "expected '||'");
        default:
          bail(span, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }

  void skipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void bail(Span span, const std::string& message) {
    diagnostics_.push_back({Severity::Error, message, span});
    throw ParseBail{};
  }

  std::string_view text_;
  std::vector<Diagnostic>& diagnostics_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diagnostics)
      : tokens_(std::move(tokens)), diagnostics_(diagnostics) {}

  SourceFile parseFile() {
    SourceFile file;
    while (!at(Token::Type::End)) {
      const Token& t = peek();
      if (t.type != Token::Type::Ident) {
        bail(t.span, "expected 'values', 'graph', or 'diagram'");
      }
      if (t.text == "values") {
        file.items.emplace_back(parseValuesDecl());
      } else if (t.text == "graph") {
        file.items.emplace_back(parseGraphDecl());
      } else if (t.text == "diagram") {
        file.items.emplace_back(parseDiagramDecl());
      } else {
        bail(t.span, "expected 'values', 'graph', or 'diagram', got '" +
                         t.text + "'");
      }
    }
    return file;
  }

 private:
  ValuesDeclAst parseValuesDecl() {
    expectKeyword("values");
    ValuesDeclAst decl;
    decl.name = expectName("domain name");
    expect(Token::Type::LBrace);
    while (true) {
      CaseAst c;
      c.name = expectIdent("case name");
      if (at(Token::Type::LBracket)) {
        next();
        while (true) {
          StyleAttrAst attr;
          attr.key = expectIdent("attribute name");
          expect(Token::Type::Eq);
          const Token& v = expect(Token::Type::String);
          attr.value = v.text;
          c.style.push_back(std::move(attr));
          if (at(Token::Type::Comma)) {
            next();
            continue;
          }
          break;
        }
        expect(Token::Type::RBracket);
      }
      decl.cases.push_back(std::move(c));
      if (at(Token::Type::Comma)) {
        next();
        continue;
      }
      break;
    }
    expect(Token::Type::RBrace);
    return decl;
  }

  GraphDeclAst parseGraphDecl() {
    expectKeyword("graph");
    GraphDeclAst decl;
    decl.name = expectName("graph name");
    if (atKeyword("over")) {
      next();
      decl.domainName = expectName("domain name");
    }
    expect(Token::Type::LBrace);
    while (!atKeyword("outputs")) {
      NeuronAst n;
      n.name = expectName("neuron name");
      expect(Token::Type::Colon);
      n.desc = parseDesc();
      expect(Token::Type::Semi);
      decl.neurons.push_back(std::move(n));
    }
    expectKeyword("outputs");
    expect(Token::Type::Colon);
    decl.outputs = parseNames();
    expect(Token::Type::Semi);
    expect(Token::Type::RBrace);
    return decl;
  }

  DiagramDeclAst parseDiagramDecl() {
    expectKeyword("diagram");
    DiagramDeclAst decl;
    decl.name = expectName("diagram name");
    expect(Token::Type::Eq);
    decl.graphName = expectName("graph name");
    expect(Token::Type::LParen);
    if (!at(Token::Type::RParen)) {
      while (true) {
        decl.args.push_back(expectIdent("input value"));
        if (at(Token::Type::Comma)) {
          next();
          continue;
        }
        break;
      }
    }
    expect(Token::Type::RParen);
    expect(Token::Type::Semi);
    return decl;
  }

  DescAst parseDesc() {
    DescAst desc;
    desc.terms.push_back(parseTerm());
    while (at(Token::Type::OrOr)) {
      next();
      desc.terms.push_back(parseTerm());
    }
    return desc;
  }

  TermAst parseTerm() {
    TermAst term;
    term.atoms.push_back(parseAtom());
    while (at(Token::Type::AndAnd)) {
      next();
      term.atoms.push_back(parseAtom());
    }
    return term;
  }

  AtomAst parseAtom() {
    AtomAst atom;
    atom.primary = parsePrimary();
    while (at(Token::Type::Ident)) {
      const Token& t = peek();
      if (t.text == "inhib" || t.text == "unless") {
        ModifierAst mod;
        mod.type = t.text == "inhib" ? ModifierAst::Type::Inhib
                                     : ModifierAst::Type::Unless;
        mod.span = t.span;
        next();
        expect(Token::Type::LParen);
        mod.names = parseNames();
        expect(Token::Type::RParen);
        atom.modifiers.push_back(std::move(mod));
      } else if (t.text == "kind") {
        ModifierAst mod;
        mod.type = ModifierAst::Type::KindMod;
        mod.span = t.span;
        next();
        const Token& k = expect(Token::Type::Ident);
        if (k.text == "action") {
          mod.kind = Kind::Action;
        } else if (k.text == "law") {
          mod.kind = Kind::Law;
        } else {
          bail(k.span, "expected 'action' or 'law', got '" + k.text + "'");
        }
        atom.modifiers.push_back(std::move(mod));
      } else {
        break;
      }
    }
    return atom;
  }

  PrimaryAst parsePrimary() {
    PrimaryAst primary;
    primary.span = peek().span;
    if (at(Token::Type::LParen)) {
      next();
      primary.form = PrimaryAst::Form::Paren;
      primary.inner.push_back(parseDesc());
      expect(Token::Type::RParen);
      return primary;
    }
    const Token& kw = expect(Token::Type::Ident);
    primary.keyword = {kw.text, kw.span};
    if (!at(Token::Type::LParen)) {
      primary.form = PrimaryAst::Form::Bare;
      return primary;
    }
    next();
    if (at(Token::Type::Number)) {
      primary.form = PrimaryAst::Form::CountCall;
      primary.count = peek().number;
      next();
      expect(Token::Type::Semi);
      primary.names = parseNames();
    } else {
      primary.form = PrimaryAst::Form::Call;
      if (!at(Token::Type::RParen)) primary.names = parseNames();
    }
    expect(Token::Type::RParen);
    return primary;
  }

  std::vector<NameRef> parseNames() {
    std::vector<NameRef> names;
    names.push_back(expectName("name"));
    while (at(Token::Type::Comma)) {
      next();
      names.push_back(expectName("name"));
    }
    return names;
  }

  const Token& peek() const { return tokens_[pos_]; }
  void next() { pos_++; }
  bool at(Token::Type t) const { return peek().type == t; }
  bool atKeyword(const std::string& word) const {
    return at(Token::Type::Ident) && peek().text == word;
  }

  const Token& expect(Token::Type t) {
    if (!at(t)) {
      bail(peek().span, std::string("expected ") + tokenName(t) + ", got " +
                            describe(peek()));
    }
    const Token& tok = peek();
    next();
    return tok;
  }

  void expectKeyword(const std::string& word) {
    if (!atKeyword(word)) {
      bail(peek().span, "expected '" + word + "', got " + describe(peek()));
    }
    next();
  }

  /// Identifier where reserved words are allowed (case names, builder
  /// arguments inside value lists are plain identifiers).
  NameRef expectIdent(const std::string& what) {
    if (!at(Token::Type::Ident)) {
      bail(peek().span, "expected " + what + ", got " + describe(peek()));
    }
    NameRef ref{peek().text, peek().span};
    next();
    return ref;
  }

  /// Identifier that must not be a reserved word.
  NameRef expectName(const std::string& what) {
    NameRef ref = expectIdent(what);
    if (reservedWords().count(ref.text)) {
      bail(ref.span,
           "reserved word '" + ref.text + "' cannot be used as a " + what);
    }
    return ref;
  }

  std::string describe(const Token& t) const {
    if (t.type == Token::Type::Ident) return "'" + t.text + "'";
    return tokenName(t.type);
  }

  [[noreturn]] void bail(Span span, const std::string& message) {
    diagnostics_.push_back({Severity::Error, message, span});
    throw ParseBail{};
  }

  std::vector<Token> tokens_;
  std::vector<Diagnostic>& diagnostics_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  try {
    Lexer lexer(text, result.diagnostics);
    Parser parser(lexer.run(), result.diagnostics);
    result.file = parser.parseFile();
  } catch (const ParseBail&) {
    result.file.reset();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string escapeString(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void printDesc(std::string& out, const DescAst& desc);

void printPrimary(std::string& out, const PrimaryAst& p) {
  switch (p.form) {
    case PrimaryAst::Form::Bare:
      out += p.keyword.text;
      return;
    case PrimaryAst::Form::Paren:
      out += "(";
      printDesc(out, p.inner.front());
      out += ")";
      return;
    case PrimaryAst::Form::CountCall:
      out += p.keyword.text + "(" + std::to_string(*p.count) + "; ";
      break;
    case PrimaryAst::Form::Call:
      out += p.keyword.text + "(";
      break;
  }
  for (std::size_t i = 0; i < p.names.size(); ++i) {
    if (i) out += ", ";
    out += p.names[i].text;
  }
  out += ")";
}

void printDesc(std::string& out, const DescAst& desc) {
  for (std::size_t t = 0; t < desc.terms.size(); ++t) {
    if (t) out += " || ";
    const TermAst& term = desc.terms[t];
    for (std::size_t a = 0; a < term.atoms.size(); ++a) {
      if (a) out += " && ";
      const AtomAst& atom = term.atoms[a];
      printPrimary(out, atom.primary);
      for (const ModifierAst& mod : atom.modifiers) {
        switch (mod.type) {
          case ModifierAst::Type::Inhib:
          case ModifierAst::Type::Unless:
            out += mod.type == ModifierAst::Type::Inhib ? " inhib(" : " unless(";
            for (std::size_t i = 0; i < mod.names.size(); ++i) {
              if (i) out += ", ";
              out += mod.names[i].text;
            }
            out += ")";
            break;
          case ModifierAst::Type::KindMod:
            out += std::string(" kind ") + kindName(mod.kind);
            break;
        }
      }
    }
  }
}

}  // namespace

std::string printSource(const SourceFile& file) {
  std::string out;
  for (std::size_t i = 0; i < file.items.size(); ++i) {
    if (i) out += "\n";
    const ItemAst& item = file.items[i];
    if (const auto* values = std::get_if<ValuesDeclAst>(&item)) {
      out += "values " + values->name.text + " { ";
      for (std::size_t c = 0; c < values->cases.size(); ++c) {
        if (c) out += ", ";
        out += values->cases[c].name.text;
        if (!values->cases[c].style.empty()) {
          out += " [";
          for (std::size_t a = 0; a < values->cases[c].style.size(); ++a) {
            if (a) out += ", ";
            const StyleAttrAst& attr = values->cases[c].style[a];
            out += attr.key.text + "=\"" + escapeString(attr.value) + "\"";
          }
          out += "]";
        }
      }
      out += " }\n";
    } else if (const auto* graph = std::get_if<GraphDeclAst>(&item)) {
      out += "graph " + graph->name.text;
      if (graph->domainName) out += " over " + graph->domainName->text;
      out += " {\n";
      for (const NeuronAst& n : graph->neurons) {
        out += "  " + n.name.text + ": ";
        printDesc(out, n.desc);
        out += ";\n";
      }
      out += "  outputs: ";
      for (std::size_t o = 0; o < graph->outputs.size(); ++o) {
        if (o) out += ", ";
        out += graph->outputs[o].text;
      }
      out += ";\n}\n";
    } else {
      const auto& diagram = std::get<DiagramDeclAst>(item);
      out += "diagram " + diagram.name.text + " = " + diagram.graphName.text +
             "(";
      for (std::size_t a = 0; a < diagram.args.size(); ++a) {
        if (a) out += ", ";
        out += diagram.args[a].text;
      }
      out += ");\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lowering

bool LoweredFile::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) {
                        return d.severity == Severity::Error;
                      });
}

const ValueDomain* LoweredFile::domain(const std::string& name) const {
  for (const auto& [n, d] : domains) {
    if (n == name) return &d;
  }
  return nullptr;
}

const Graph* LoweredFile::graph(const std::string& name) const {
  for (const auto& [n, g] : graphs) {
    if (n == name) return &g;
  }
  return nullptr;
}

const Diagram* LoweredFile::diagram(const std::string& name) const {
  for (const auto& [n, d] : diagrams) {
    if (n == name) return &d;
  }
  return nullptr;
}

namespace {

/// Aborts lowering of the current declaration; the diagnostic is already
/// recorded.
struct LowerBail {};

class Lowerer {
 public:
  Lowerer(const SourceFile& file, const BuilderRegistry& registry)
      : file_(file), registry_(registry) {}

  LoweredFile run() {
    for (const ItemAst& item : file_.items) {
      if (const auto* values = std::get_if<ValuesDeclAst>(&item)) {
        try {
          lowerValues(*values);
        } catch (const LowerBail&) {
        }
      }
    }
    for (const ItemAst& item : file_.items) {
      if (const auto* graph = std::get_if<GraphDeclAst>(&item)) {
        try {
          lowerGraph(*graph);
        } catch (const LowerBail&) {
        }
      }
    }
    for (const ItemAst& item : file_.items) {
      if (const auto* diagram = std::get_if<DiagramDeclAst>(&item)) {
        try {
          lowerDiagram(*diagram);
        } catch (const LowerBail&) {
        }
      }
    }
    return std::move(out_);
  }

 private:
  void lowerValues(const ValuesDeclAst& decl) {
    if (out_.domain(decl.name.text)) {
      bail(decl.name.span,
           "domain '" + decl.name.text + "' declared twice");
    }
    std::vector<std::pair<std::string, Style>> cases;
    for (const CaseAst& c : decl.cases) {
      Style style;
      for (const StyleAttrAst& attr : c.style) {
        style.emplace_back(attr.key.text, attr.value);
      }
      cases.emplace_back(c.name.text, std::move(style));
    }
    try {
      out_.domains.emplace_back(
          decl.name.text, ValueDomain::declare(decl.name.text, std::move(cases)));
    } catch (const Error& e) {
      bail(decl.name.span, e.what());
    }
  }

  ValueDomain resolveDomain(const GraphDeclAst& decl) {
    if (!decl.domainName) return ValueDomain::boolean();
    if (const ValueDomain* d = out_.domain(decl.domainName->text)) return *d;
    if (decl.domainName->text == "Bool") return ValueDomain::boolean();
    bail(decl.domainName->span,
         "unknown value domain '" + decl.domainName->text + "'");
  }

  void lowerGraph(const GraphDeclAst& decl) {
    if (declaredGraphs_.count(decl.name.text)) {
      bail(decl.name.span, "graph '" + decl.name.text + "' declared twice");
    }
    declaredGraphs_.insert(decl.name.text);
    ValueDomain domain = resolveDomain(decl);

    std::map<std::string, Span> declared;
    for (const NeuronAst& n : decl.neurons) {
      auto [it, fresh] = declared.emplace(n.name.text, n.name.span);
      if (!fresh) {
        bail(n.name.span, "neuron '" + n.name.text + "' declared twice");
      }
    }
    auto checkRef = [&](const NameRef& ref) {
      if (!declared.count(ref.text)) {
        bail(ref.span, "unknown neuron '" + ref.text + "'");
      }
    };

    std::vector<Neuron> neurons;
    for (const NeuronAst& n : decl.neurons) {
      neurons.push_back({n.name.text, lowerDesc(n.desc, domain, checkRef)});
    }
    std::vector<std::string> terminals;
    for (const NameRef& o : decl.outputs) {
      checkRef(o);
      terminals.push_back(o.text);
    }
    std::vector<std::string> droppedNames;
    try {
      Graph g = Graph::build(domain, std::move(neurons), std::move(terminals),
                             &droppedNames);
      out_.graphs.emplace_back(decl.name.text, std::move(g));
    } catch (const Error& e) {
      bail(decl.name.span, e.what());
    }
    for (const std::string& name : droppedNames) {
      out_.diagnostics.push_back(
          {Severity::Warning,
           "neuron '" + name + "' is not reachable from any output and was dropped",
           declared.at(name)});
    }
  }

  Description lowerDesc(const DescAst& desc, const ValueDomain& domain,
                        const std::function<void(const NameRef&)>& checkRef) {
    std::optional<Description> result;
    for (const TermAst& term : desc.terms) {
      std::optional<Description> termDesc;
      for (const AtomAst& atom : term.atoms) {
        Description d = lowerAtom(atom, domain, checkRef);
        if (!termDesc) {
          termDesc = std::move(d);
        } else {
          termDesc = guarded(atom.primary.span, [&] {
            return andD(std::move(*termDesc), std::move(d), domain);
          });
        }
      }
      if (!result) {
        result = std::move(*termDesc);
      } else {
        result = guarded(term.atoms.front().primary.span, [&] {
          return orD(std::move(*result), std::move(*termDesc), domain);
        });
      }
    }
    return std::move(*result);
  }

  Description lowerAtom(const AtomAst& atom, const ValueDomain& domain,
                        const std::function<void(const NameRef&)>& checkRef) {
    Description d = lowerPrimary(atom.primary, domain, checkRef);
    for (const ModifierAst& mod : atom.modifiers) {
      switch (mod.type) {
        case ModifierAst::Type::Unless:
          if (mod.names.size() != 1) {
            bail(mod.span, "'unless' takes exactly one neuron");
          }
          [[fallthrough]];
        case ModifierAst::Type::Inhib: {
          std::vector<std::string> names;
          for (const NameRef& ref : mod.names) {
            checkRef(ref);
            names.push_back(ref.text);
          }
          d = guarded(mod.span, [&] {
            return inhibBy(std::move(d), domain, std::move(names));
          });
          break;
        }
        case ModifierAst::Type::KindMod:
          d = isKind(std::move(d), mod.kind);
          break;
      }
    }
    return d;
  }

  Description lowerPrimary(const PrimaryAst& primary, const ValueDomain& domain,
                           const std::function<void(const NameRef&)>& checkRef) {
    if (primary.form == PrimaryAst::Form::Paren) {
      return lowerDesc(primary.inner.front(), domain, checkRef);
    }
    const NameRef& kw = primary.keyword;
    if (!registry_.contains(kw.text)) {
      bail(kw.span, "unknown builder '" + kw.text + "'");
    }
    BuilderShape shape = registry_.shapeOf(kw.text);
    BuilderCall call;
    switch (shape) {
      case BuilderShape::Bare:
        if (primary.form != PrimaryAst::Form::Bare) {
          bail(kw.span, "builder '" + kw.text + "' takes no arguments");
        }
        break;
      case BuilderShape::Case:
        if (primary.form != PrimaryAst::Form::Call ||
            primary.names.size() != 1) {
          bail(kw.span, "builder '" + kw.text + "' takes one case name");
        }
        call.caseName = primary.names.front().text;
        break;
      case BuilderShape::CountNames:
        if (primary.form != PrimaryAst::Form::CountCall ||
            primary.names.empty()) {
          bail(kw.span, "builder '" + kw.text +
                            "' takes a count and names: " + kw.text +
                            "(k; a, b)");
        }
        call.count = primary.count;
        for (const NameRef& ref : primary.names) {
          checkRef(ref);
          call.names.push_back(ref.text);
        }
        break;
      case BuilderShape::Names:
        if (primary.form != PrimaryAst::Form::Call || primary.names.empty()) {
          bail(kw.span,
               "builder '" + kw.text + "' takes a list of neuron names");
        }
        for (const NameRef& ref : primary.names) {
          checkRef(ref);
          call.names.push_back(ref.text);
        }
        break;
    }
    return guarded(kw.span,
                   [&] { return registry_.make(kw.text, domain, call); });
  }

  void lowerDiagram(const DiagramDeclAst& decl) {
    if (declaredDiagrams_.count(decl.name.text)) {
      bail(decl.name.span, "diagram '" + decl.name.text + "' declared twice");
    }
    declaredDiagrams_.insert(decl.name.text);
    const Graph* g = out_.graph(decl.graphName.text);
    if (!g) {
      // A declared-but-failed graph already produced an error.
      if (!declaredGraphs_.count(decl.graphName.text)) {
        bail(decl.graphName.span,
             "unknown graph '" + decl.graphName.text + "'");
      }
      return;
    }
    std::vector<Value> values;
    for (const NameRef& arg : decl.args) {
      values.push_back(
          guarded(arg.span, [&] { return g->domain().parse(arg.text); }));
    }
    Diagram d = guarded(decl.name.span,
                        [&] { return Diagram(*g, std::move(values)); });
    out_.diagrams.emplace_back(decl.name.text, std::move(d));
  }

  template <typename Fn>
  auto guarded(Span span, Fn fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const Error& e) {
      bail(span, e.what());
    }
  }

  [[noreturn]] void bail(Span span, const std::string& message) {
    out_.diagnostics.push_back({Severity::Error, message, span});
    throw LowerBail{};
  }

  const SourceFile& file_;
  const BuilderRegistry& registry_;
  LoweredFile out_;
  std::set<std::string> declaredGraphs_;
  std::set<std::string> declaredDiagrams_;
};

}  // namespace

LoweredFile lower(const SourceFile& file, const BuilderRegistry& registry) {
  return Lowerer(file, registry).run();
}

LoweredFile loadString(std::string_view text, const BuilderRegistry& registry) {
  ParseResult parsed = parse(text);
  if (!parsed.ok()) {
    LoweredFile out;
    out.diagnostics = std::move(parsed.diagnostics);
    return out;
  }
  LoweredFile out = lower(*parsed.file, registry);
  out.diagnostics.insert(out.diagnostics.begin(), parsed.diagnostics.begin(),
                         parsed.diagnostics.end());
  return out;
}

LoweredFile loadFile(const std::string& path, const BuilderRegistry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LoweredFile out;
    out.diagnostics.push_back(
        {Severity::Error, "cannot read file '" + path + "'", Span{1, 1}});
    return out;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return loadString(buffer.str(), registry);
}

}  // namespace ncause
