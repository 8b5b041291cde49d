#include "pdlsl/parse.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace pdlsl {

std::string to_string(const SourceSpan& span) {
  return std::to_string(span.line) + ":" + std::to_string(span.column);
}

const char* parse_error_kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax: return "SyntaxError";
    case ParseErrorKind::UnknownArticulator: return "UnknownArticulator";
    case ParseErrorKind::UnknownDirection: return "UnknownDirection";
    case ParseErrorKind::InvalidAtom: return "InvalidAtom";
    case ParseErrorKind::DuplicateSign: return "DuplicateSign";
  }
  return "ParseError";
}

namespace {

std::string render_message(ParseErrorKind kind, const SourceSpan& span, const std::string& detail,
                           const std::vector<std::string>& expected) {
  std::string msg = std::string(parse_error_kind_name(kind)) + " at " + to_string(span) + ": " + detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += "'" + expected[i] + "'";
    }
    msg += ")";
  }
  return msg;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, std::string message,
                       std::vector<std::string> expected, std::optional<SourceSpan> other)
    : Error(ErrorCode::Schema, render_message(kind, span, message, expected)),
      kind_(kind),
      span_(span),
      detail_(std::move(message)),
      expected_(std::move(expected)),
      other_(other) {}

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Less,
  Greater,
  Comma,
  Bang,
  Semi,
  Amp,
  Bar,
  Star,
  Dot,
  Colon,
  Define,  // :=
  Arrow,   // ->
  Or,      // \/
  And,     // /\ (backslash)
  End,
  Invalid,
};

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::LBracket: return "[";
    case Tok::RBracket: return "]";
    case Tok::Less: return "<";
    case Tok::Greater: return ">";
    case Tok::Comma: return ",";
    case Tok::Bang: return "!";
    case Tok::Semi: return ";";
    case Tok::Amp: return "&";
    case Tok::Bar: return "|";
    case Tok::Star: return "*";
    case Tok::Dot: return ".";
    case Tok::Colon: return ":";
    case Tok::Define: return ":=";
    case Tok::Arrow: return "->";
    case Tok::Or: return "\\/";
    case Tok::And: return "/\\";
    case Tok::End: return "end of input";
    case Tok::Invalid: return "invalid character";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    SourceSpan span{line_, col_, 1};
    if (pos_ >= src_.size()) return {Tok::End, {}, span};
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      advance(1);
      return Token{k, src_.substr(start, 1), span};
    };
    auto pair = [&](Tok k) {
      advance(2);
      span.length = 2;
      return Token{k, src_.substr(start, 2), span};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 0;
      while (pos_ + n < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) || src_[pos_ + n] == '_')) {
        ++n;
      }
      advance(n);
      span.length = n;
      return {Tok::Ident, src_.substr(start, n), span};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (pos_ + n < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + n]))) ++n;
      advance(n);
      span.length = n;
      return {Tok::Number, src_.substr(start, n), span};
    }
    const char d = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '<': return single(Tok::Less);
      case '>': return single(Tok::Greater);
      case ',': return single(Tok::Comma);
      case '!': return single(Tok::Bang);
      case ';': return single(Tok::Semi);
      case '&': return single(Tok::Amp);
      case '|': return single(Tok::Bar);
      case '*': return single(Tok::Star);
      case '.': return single(Tok::Dot);
      case ':': return d == '=' ? pair(Tok::Define) : single(Tok::Colon);
      case '-':
        if (d == '>') return pair(Tok::Arrow);
        break;
      case '\\':
        if (d == '/') return pair(Tok::Or);
        break;
      case '/':
        if (d == '\\') return pair(Tok::And);
        break;
      default: break;
    }
    return single(Tok::Invalid);
  }

 private:
  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

constexpr int kMaxDepth = 256;

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { tok_ = lexer_.next(); }

  struct Surface {
    Formula formula;
    std::optional<Formula> antecedent;
  };

  Surface formula_surface() {
    Formula lhs = disjunction();
    if (tok_.kind == Tok::Arrow) {
      bump();
      Formula rhs = implication();
      return {Formula::implies(lhs, std::move(rhs)), lhs};
    }
    return {lhs, std::nullopt};
  }

  Formula implication() {
    DepthGuard guard(*this);
    return formula_surface().formula;
  }

  Action action() {
    DepthGuard guard(*this);
    return sequence();
  }

  Atom atom_only() {
    if (tok_.kind != Tok::Ident || !is_atom_keyword(tok_.text)) {
      fail({"dir", "at", "touch", "cfg", "orient"});
    }
    return atom();
  }

  void expect_end() {
    if (tok_.kind != Tok::End) fail({describe(Tok::End)});
  }

  const Token& peek() const { return tok_; }
  Token bump() {
    Token t = tok_;
    tok_ = lexer_.next();
    return t;
  }

  Token expect(Tok kind) {
    if (tok_.kind != kind) fail({describe(kind)});
    return bump();
  }

  Token expect_keyword(std::string_view word) {
    if (tok_.kind != Tok::Ident || tok_.text != word) fail({std::string(word)});
    return bump();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = tok_.kind == Tok::End ? "end of input" : "'" + std::string(tok_.text) + "'";
    throw ParseError(ParseErrorKind::Syntax, tok_.span, "unexpected " + found, std::move(expected));
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) {
        throw ParseError(ParseErrorKind::Syntax, parser.tok_.span, "nesting too deep");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  static bool is_atom_keyword(std::string_view s) {
    return s == "dir" || s == "at" || s == "touch" || s == "cfg" || s == "orient";
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (tok_.kind == Tok::Or) {
      bump();
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (tok_.kind == Tok::And) {
      bump();
      f = Formula::conjunction(f, unary());
    }
    return f;
  }

  Formula unary() {
    DepthGuard guard(*this);
    switch (tok_.kind) {
      case Tok::Bang:
        bump();
        return Formula::negation(unary());
      case Tok::LBracket: {
        bump();
        Action a = action();
        expect(Tok::RBracket);
        return Formula::box(std::move(a), unary());
      }
      case Tok::Less: {
        bump();
        Action a = action();
        expect(Tok::Greater);
        return Formula::diamond(std::move(a), unary());
      }
      case Tok::LParen: {
        bump();
        Formula f = implication();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident:
        if (tok_.text == "true") {
          bump();
          return Formula::top();
        }
        if (is_atom_keyword(tok_.text)) return Formula::atom(atom());
        break;
      default: break;
    }
    fail({"!", "[", "<", "(", "true", "dir", "at", "touch", "cfg", "orient"});
  }

  Atom atom() {
    const Token head = bump();
    expect(Tok::LParen);
    Atom result;
    if (head.text == "dir") {
      const Token a_tok = tok_;
      Articulator a = articulator();
      expect(Tok::Comma);
      Articulator b = articulator();
      expect(Tok::Comma);
      Direction d = direction();
      require_distinct(a, b, a_tok, head);
      result = RelDir{a, d, b};
    } else if (head.text == "at") {
      Articulator a = articulator();
      expect(Tok::Comma);
      result = At{a, name()};
    } else if (head.text == "touch") {
      const Token a_tok = tok_;
      Articulator a = articulator();
      expect(Tok::Comma);
      Articulator b = articulator();
      require_distinct(a, b, a_tok, head);
      result = Touch{a, b};
    } else if (head.text == "cfg") {
      Articulator a = articulator();
      expect(Tok::Comma);
      result = Config{a, name()};
    } else {
      Articulator a = articulator();
      expect(Tok::Comma);
      result = Orient{a, direction()};
    }
    expect(Tok::RParen);
    return result;
  }

  void require_distinct(Articulator a, Articulator b, const Token& at, const Token& head) {
    if (a == b) {
      throw ParseError(ParseErrorKind::InvalidAtom, at.span,
                       std::string(head.text) + " requires two different articulators");
    }
  }

  Articulator articulator() {
    if (tok_.kind != Tok::Ident) fail({"D", "W", "R", "L"});
    if (auto a = articulator_from_string(tok_.text)) {
      bump();
      return *a;
    }
    throw ParseError(ParseErrorKind::UnknownArticulator, tok_.span,
                     "unknown articulator '" + std::string(tok_.text) + "'", {"D", "W", "R", "L"});
  }

  Direction direction() {
    std::vector<std::string> all;
    for (Direction d : kDirections) all.emplace_back(to_string(d));
    if (tok_.kind != Tok::Ident) fail(all);
    if (auto d = direction_from_string(tok_.text)) {
      bump();
      return *d;
    }
    throw ParseError(ParseErrorKind::UnknownDirection, tok_.span,
                     "unknown direction '" + std::string(tok_.text) + "'", std::move(all));
  }

  std::string name() { return std::string(expect(Tok::Ident).text); }

  Action sequence() {
    Action a = concurrent();
    while (tok_.kind == Tok::Semi) {
      bump();
      a = Action::seq(a, concurrent());
    }
    return a;
  }

  Action concurrent() {
    Action a = alternative();
    while (tok_.kind == Tok::Amp) {
      bump();
      a = Action::concurrent(a, alternative());
    }
    return a;
  }

  Action alternative() {
    Action a = starred();
    while (tok_.kind == Tok::Bar) {
      bump();
      a = Action::choice(a, starred());
    }
    return a;
  }

  Action starred() {
    Action a = primitive();
    if (tok_.kind == Tok::Star) {
      bump();
      return Action::star(std::move(a));
    }
    return a;
  }

  Action primitive() {
    if (tok_.kind == Tok::LParen) {
      bump();
      Action a = action();
      expect(Tok::RParen);
      return a;
    }
    if (tok_.kind == Tok::Ident && tok_.text == "move") {
      bump();
      expect(Tok::LParen);
      Articulator a = articulator();
      expect(Tok::Comma);
      Direction d = direction();
      expect(Tok::RParen);
      return Action::atomic(Move{a, d});
    }
    if (tok_.kind == Tok::Ident && tok_.text == "thrill") {
      bump();
      expect(Tok::LParen);
      Articulator a = articulator();
      expect(Tok::RParen);
      return Action::atomic(Thrill{a});
    }
    fail({"move", "thrill", "("});
  }

  Lexer lexer_;
  Token tok_;
  int depth_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.implication();
  p.expect_end();
  return f;
}

Action parse_action(std::string_view text) {
  Parser p(text);
  Action a = p.action();
  p.expect_end();
  return a;
}

Atom parse_atom(std::string_view text) {
  Parser p(text);
  Atom a = p.atom_only();
  p.expect_end();
  return a;
}

// ---- printing ----------------------------------------------------------------

std::string print_atom(const Atom& p) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        std::string s;
        if constexpr (std::is_same_v<T, RelDir>) {
          s = "dir(" + std::string(to_string(a.first)) + "," + std::string(to_string(a.second)) + "," +
              std::string(to_string(a.dir)) + ")";
        } else if constexpr (std::is_same_v<T, At>) {
          s = "at(" + std::string(to_string(a.articulator)) + "," + a.place + ")";
        } else if constexpr (std::is_same_v<T, Touch>) {
          s = "touch(" + std::string(to_string(a.first)) + "," + std::string(to_string(a.second)) + ")";
        } else if constexpr (std::is_same_v<T, Config>) {
          s = "cfg(" + std::string(to_string(a.articulator)) + "," + a.label + ")";
        } else {
          s = "orient(" + std::string(to_string(a.articulator)) + "," + std::string(to_string(a.dir)) + ")";
        }
        return s;
      },
      p);
}

std::string print_atomic_action(const AtomicAction& a) {
  if (const auto* m = std::get_if<Move>(&a)) {
    return "move(" + std::string(to_string(m->articulator)) + "," + std::string(to_string(m->dir)) + ")";
  }
  return "thrill(" + std::string(to_string(std::get<Thrill>(a).articulator)) + ")";
}

namespace {

// Binding strength of action operators: seq < par < choice < star < atomic.
int action_level(Action::Kind k) {
  switch (k) {
    case Action::Kind::Seq: return 1;
    case Action::Kind::Concurrent: return 2;
    case Action::Kind::Choice: return 3;
    case Action::Kind::Star: return 4;
    case Action::Kind::Atomic: return 5;
  }
  return 5;
}

void print_action_into(const Action& a, int min_level, std::string& out) {
  const int level = action_level(a.kind());
  const bool parens = level < min_level;
  if (parens) out += '(';
  switch (a.kind()) {
    case Action::Kind::Atomic: out += print_atomic_action(a.atom()); break;
    case Action::Kind::Star:
      // star := prim "*"; a starred body must itself be primitive.
      print_action_into(a.lhs(), 5, out);
      out += '*';
      break;
    default: {
      const char* op = a.kind() == Action::Kind::Seq ? "; " : a.kind() == Action::Kind::Concurrent ? " & " : " | ";
      print_action_into(a.lhs(), level, out);
      out += op;
      print_action_into(a.rhs(), level + 1, out);
      break;
    }
  }
  if (parens) out += ')';
}

// Formula levels: and = 1, unary = 2.
void print_formula_into(const Formula& f, int min_level, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Top: out += "true"; return;
    case Formula::Kind::Atom: out += print_atom(f.atom_value()); return;
    case Formula::Kind::Not:
      out += '!';
      print_formula_into(f.lhs(), 2, out);
      return;
    case Formula::Kind::Box:
      out += '[';
      print_action_into(f.action(), 1, out);
      out += "] ";
      print_formula_into(f.lhs(), 2, out);
      return;
    case Formula::Kind::And: {
      const bool parens = min_level > 1;
      if (parens) out += '(';
      print_formula_into(f.lhs(), 1, out);
      out += " /\\ ";
      print_formula_into(f.rhs(), 2, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_action(const Action& a) {
  std::string out;
  print_action_into(a, 1, out);
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_into(f, 1, out);
  return out;
}

// ---- lexicon ---------------------------------------------------------------------

const LexiconEntry* LexiconFile::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

LexiconFile parse_lexicon(std::string_view text) {
  Parser p(text);
  LexiconFile lex;
  std::map<std::string, SourceSpan, std::less<>> seen;

  if (p.peek().kind == Tok::Ident && p.peek().text == "format") {
    p.bump();
    p.expect(Tok::Colon);
    const Token version = p.expect(Tok::Number);
    if (version.text != "1") {
      throw ParseError(ParseErrorKind::Syntax, version.span,
                       "unsupported lexicon format '" + std::string(version.text) + "'", {"1"});
    }
  }

  while (p.peek().kind != Tok::End) {
    const Token kw = p.expect_keyword("sign");
    const Token name = p.expect(Tok::Ident);
    p.expect(Tok::Define);
    Parser::Surface surface{Formula::top(), std::nullopt};
    Token dot;
    try {
      surface = p.formula_surface();
      dot = p.expect(Tok::Dot);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.span(), "in sign '" + std::string(name.text) + "' (" +
                                               to_string(kw.span) + "): " + e.detail(),
                       e.expected());
    }

    SourceSpan span = kw.span;
    span.length = dot.span.line == kw.span.line ? dot.span.column + 1 - kw.span.column : name.span.column +
                                                                                          name.span.length -
                                                                                          kw.span.column;
    std::string key(name.text);
    if (auto it = seen.find(key); it != seen.end()) {
      throw ParseError(ParseErrorKind::DuplicateSign, name.span, "duplicate sign '" + key + "'", {}, it->second);
    }
    seen.emplace(key, name.span);
    lex.entries.push_back({key, std::move(surface.formula), std::move(surface.antecedent), span});
  }
  return lex;
}

std::string print_lexicon(const LexiconFile& lexicon) {
  std::string out;
  for (const auto& e : lexicon.entries) {
    out += "sign " + e.name + " := ";
    if (e.anchor) {
      // formula = !(anchor /\ !consequent)
      const Formula& consequent = e.formula.lhs().rhs().lhs();
      std::string lhs;
      print_formula_into(*e.anchor, 1, lhs);
      out += lhs + " -> " + print_formula(consequent);
    } else {
      out += print_formula(e.formula);
    }
    out += " .\n";
  }
  return out;
}

}  // namespace pdlsl
