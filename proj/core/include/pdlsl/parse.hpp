#pragma once

// Concrete ASCII syntax for formulas and lexicon files.
//
//   formula  := impl
//   impl     := or ("->" impl)?
//   or       := and ("\/" and)*
//   and      := unary ("/\" unary)*
//   unary    := "!" unary | "[" action "]" unary | "<" action ">" unary
//             | "true" | atom | "(" formula ")"
//   atom     := dir(art, art, DIR) | at(art, NAME) | touch(art, art)
//             | cfg(art, NAME) | orient(art, DIR)
//   action   := seq
//   seq      := par (";" par)*
//   par      := choice ("&" choice)*
//   choice   := star ("|" star)*
//   star     := prim "*"?
//   prim     := move(art, DIR) | thrill(art) | "(" action ")"
//
// dir(b1, b2, d) reads "b1 lies in direction d of b2". Note the argument
// order: the direction comes last.
//
// Lexicon files hold entries `sign NAME := <formula> .` with `#` comments
// and an optional `format: 1` header.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdlsl/error.hpp"
#include "pdlsl/vocabulary.hpp"

namespace pdlsl {

/// 1-based line/column; length counts bytes.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 1;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

enum class ParseErrorKind { Syntax, UnknownArticulator, UnknownDirection, InvalidAtom, DuplicateSign };

const char* parse_error_kind_name(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, std::string message,
             std::vector<std::string> expected = {}, std::optional<SourceSpan> other = std::nullopt);

  ParseErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  /// Tokens that would have been accepted at the error position.
  const std::vector<std::string>& expected() const { return expected_; }
  /// For DuplicateSign: span of the first definition.
  const std::optional<SourceSpan>& other_span() const { return other_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
  std::string detail_;
  std::vector<std::string> expected_;
  std::optional<SourceSpan> other_;
};

Formula parse_formula(std::string_view text);
Action parse_action(std::string_view text);
Atom parse_atom(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_action(const Action& a);
std::string print_atom(const Atom& p);
std::string print_atomic_action(const AtomicAction& a);

struct LexiconEntry {
  std::string name;
  Formula formula;
  /// Antecedent of the entry when its outermost connective was written as
  /// `->`; it names the posture a state must show to anchor the sign.
  std::optional<Formula> anchor;
  SourceSpan span;
};

struct LexiconFile {
  std::vector<LexiconEntry> entries;

  const LexiconEntry* find(std::string_view name) const;
};

LexiconFile parse_lexicon(std::string_view text);

/// Canonical text of a lexicon (one entry per line, printed formulas).
std::string print_lexicon(const LexiconFile& lexicon);

}  // namespace pdlsl
