#pragma once

// Lexer and parser for the theory surface syntax:
//
//   command ::= ident ":" term "."
//             | "def" ident ":" term ":=" term "."
//             | "[" ctx "]" term "-->" term "."
//   ctx     ::= ε | ident ":" term ("," ident ":" term)*
//   term    ::= ident ":" app "->" term        dependent product
//             | ident ":" app "=>" term        annotated abstraction
//             | ident "=>" term                unannotated abstraction
//             | app "->" term                  arrow (right-associative)
//             | app
//   app     ::= atom+
//   atom    ::= ident | "Type" | "(" term ")"
//
// Comments are "(; ... ;)" and nest. Constants in parsed commands are
// slices of the input buffer; the buffer must outlive them.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lpc/error.hpp"
#include "lpc/rule.hpp"
#include "lpc/term.hpp"

namespace lpc {

enum class TokenKind : std::uint8_t {
  Ident,
  Colon,
  ColonEq,
  Dot,
  Arrow,
  FatArrow,
  LongArrow,
  LBrack,
  RBrack,
  Comma,
  LPar,
  RPar,
  KwDef,
  KwType,
  KwKind,
  End,
};

const char* token_name(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::End;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::size_t line, std::size_t column)
      : Error(std::move(message)), offset(offset), line(line), column(column) {}
  std::size_t offset;
  std::size_t line;
  std::size_t column;
  // 1-based index of the command being parsed; set by Parser.
  std::size_t command = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : in_(input) {}

  /// Next token; End once the input is exhausted.
  Token next();
  std::string_view text(const Token& t) const { return in_.substr(t.begin, t.end - t.begin); }
  std::string_view input() const { return in_; }

 private:
  void skip_trivia();
  void advance();
  [[noreturn]] void fail(const std::string& msg, std::size_t offset, std::size_t line, std::size_t col) const;

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

/// Whole-buffer tokenisation.
std::vector<Token> lex(std::string_view input);

/// Surface terms carry their constants unshared.
template <class C>
using STerm = Term<C, Unshared>;

template <class C>
struct Declaration {
  C name;
  STerm<C> type;
};

template <class C>
struct Definition {
  C name;
  STerm<C> type;
  STerm<C> body;
};

template <class C>
struct RuleVar {
  C name;
  STerm<C> type;
};

template <class C>
struct RuleCommand {
  std::vector<RuleVar<C>> ctx;
  Pattern<C> lhs;
  STerm<C> rhs;
};

struct SourcePos {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

template <class C>
struct Command {
  std::variant<Declaration<C>, Definition<C>, RuleCommand<C>> item;
  std::size_t index = 0;  // 1-based position in its file
  SourcePos pos;
};

/// Borrowed and owned constant representations.
using Borrowed = std::string_view;
using Owned = std::string;

/// Pull parser: next() yields one command as soon as its "." is read.
class Parser {
 public:
  explicit Parser(std::string_view input) : lex_(input) {}

  std::optional<Command<Borrowed>> next();
  std::string_view input() const { return lex_.input(); }

 private:
  const Token& peek(std::size_t k = 0);
  Token take();
  Token expect(TokenKind k, const char* what);
  [[noreturn]] void fail_at(const Token& t, const std::string& expected);

  STerm<Borrowed> parse_term();
  STerm<Borrowed> parse_app();
  STerm<Borrowed> parse_atom();
  STerm<Borrowed> resolve(std::string_view name) const;
  bool starts_atom(TokenKind k) const;

  Lexer lex_;
  std::deque<Token> ahead_;
  std::vector<std::string_view> bound_;
  std::size_t count_ = 0;
  std::size_t last_end_ = 0;
  bool failed_ = false;
};

/// Eagerly parses every command (throws on the first error).
std::vector<Command<Borrowed>> parse_all(std::string_view input);

template <class C2, class C, class F>
Pattern<C2> map_pattern(const Pattern<C>& p, F&& f) {
  if (const auto* v = p.as_mvar()) return Pattern<C2>::mvar(v->level);
  const auto& h = *p.as_head();
  std::vector<Pattern<C2>> args;
  args.reserve(h.args.size());
  for (const auto& a : h.args) args.push_back(map_pattern<C2>(a, f));
  return Pattern<C2>::head(f(h.symbol), std::move(args));
}

template <class C2, class C, class F>
Command<C2> map_command(const Command<C>& c, F&& f) {
  Command<C2> out;
  out.index = c.index;
  out.pos = c.pos;
  if (const auto* d = std::get_if<Declaration<C>>(&c.item)) {
    out.item = Declaration<C2>{f(d->name), map_constants<C2>(d->type, f)};
  } else if (const auto* d = std::get_if<Definition<C>>(&c.item)) {
    out.item = Definition<C2>{f(d->name), map_constants<C2>(d->type, f), map_constants<C2>(d->body, f)};
  } else {
    const auto& r = std::get<RuleCommand<C>>(c.item);
    RuleCommand<C2> o;
    for (const auto& v : r.ctx) o.ctx.push_back({f(v.name), map_constants<C2>(v.type, f)});
    o.lhs = map_pattern<C2>(r.lhs, f);
    o.rhs = map_constants<C2>(r.rhs, f);
    out.item = std::move(o);
  }
  return out;
}

/// Copies every borrowed constant so the command can leave the buffer's thread.
template <class C>
Command<Owned> own_command(const Command<C>& c) {
  return map_command<Owned>(c, [](const C& s) { return Owned(s); });
}

}  // namespace lpc
