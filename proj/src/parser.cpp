#include <algorithm>

#include "lpc/parse.hpp"

namespace lpc {

using ST = STerm<Borrowed>;

const Token& Parser::peek(std::size_t k) {
  while (ahead_.size() <= k) ahead_.push_back(lex_.next());
  return ahead_[k];
}

Token Parser::take() {
  peek();
  Token t = ahead_.front();
  ahead_.pop_front();
  last_end_ = t.end;
  return t;
}

void Parser::fail_at(const Token& t, const std::string& expected) {
  failed_ = true;
  std::string found = t.kind == TokenKind::Ident ? "identifier '" + std::string(lex_.text(t)) + "'"
                                                  : token_name(t.kind);
  throw ParseError("expected " + expected + ", found " + found, t.begin, t.line, t.column);
}

Token Parser::expect(TokenKind k, const char* what) {
  if (peek().kind != k) fail_at(peek(), what);
  return take();
}

bool Parser::starts_atom(TokenKind k) const {
  return k == TokenKind::Ident || k == TokenKind::KwType || k == TokenKind::LPar || k == TokenKind::KwKind;
}

ST Parser::resolve(std::string_view name) const {
  for (std::size_t i = bound_.size(); i-- > 0;) {
    if (bound_[i] == name) return ST::var(bound_.size() - 1 - i);
  }
  return ST::constant(name);
}

ST Parser::parse_atom() {
  const Token t = peek();
  switch (t.kind) {
    case TokenKind::Ident:
      take();
      return resolve(lex_.text(t));
    case TokenKind::KwType:
      take();
      return ST::type();
    case TokenKind::KwKind:
      failed_ = true;
      throw ParseError("'Kind' cannot appear in a term", t.begin, t.line, t.column);
    case TokenKind::LPar: {
      take();
      ST inner = parse_term();
      expect(TokenKind::RPar, "')'");
      return inner;
    }
    default:
      fail_at(t, "a term");
  }
}

ST Parser::parse_app() {
  ST head = parse_atom();
  std::vector<ST> args;
  while (starts_atom(peek().kind)) args.push_back(parse_atom());
  return ST::app(std::move(head), std::move(args));
}

ST Parser::parse_term() {
  if (peek().kind == TokenKind::Ident && peek(1).kind == TokenKind::Colon) {
    const Token name = take();
    take();
    ST dom = parse_app();
    const Token op = peek();
    if (op.kind != TokenKind::Arrow && op.kind != TokenKind::FatArrow) fail_at(op, "'->' or '=>'");
    take();
    bound_.push_back(lex_.text(name));
    ST body = parse_term();
    bound_.pop_back();
    Name n(lex_.text(name));
    if (op.kind == TokenKind::Arrow) return ST::pi(std::move(n), std::move(dom), std::move(body));
    return ST::lam(std::move(n), std::move(dom), std::move(body));
  }
  if (peek().kind == TokenKind::Ident && peek(1).kind == TokenKind::FatArrow) {
    const Token name = take();
    take();
    bound_.push_back(lex_.text(name));
    ST body = parse_term();
    bound_.pop_back();
    return ST::lam(Name(lex_.text(name)), std::nullopt, std::move(body));
  }
  ST a = parse_app();
  if (peek().kind == TokenKind::Arrow) {
    take();
    // Anonymous binder: nothing can refer to it.
    bound_.emplace_back();
    ST b = parse_term();
    bound_.pop_back();
    return ST::pi(Name{}, std::move(a), std::move(b));
  }
  return a;
}

std::optional<Command<Borrowed>> Parser::next() {
  if (failed_) return std::nullopt;
  const std::size_t index = count_ + 1;
  Token first;
  try {
    first = peek();
  } catch (ParseError& e) {
    failed_ = true;
    count_ = index;
    e.command = index;
    throw;
  }
  if (first.kind == TokenKind::End) return std::nullopt;
  count_ = index;
  Command<Borrowed> cmd;
  cmd.index = index;
  cmd.pos = SourcePos{first.begin, first.begin, first.line, first.column};
  try {
    if (first.kind == TokenKind::Ident) {
      const Token name = take();
      expect(TokenKind::Colon, "':'");
      ST ty = parse_term();
      expect(TokenKind::Dot, "'.'");
      cmd.item = Declaration<Borrowed>{lex_.text(name), std::move(ty)};
    } else if (first.kind == TokenKind::KwDef) {
      take();
      const Token name = expect(TokenKind::Ident, "a constant name");
      expect(TokenKind::Colon, "':'");
      ST ty = parse_term();
      expect(TokenKind::ColonEq, "':='");
      ST body = parse_term();
      expect(TokenKind::Dot, "'.'");
      cmd.item = Definition<Borrowed>{lex_.text(name), std::move(ty), std::move(body)};
    } else if (first.kind == TokenKind::LBrack) {
      take();
      RuleCommand<Borrowed> rule;
      const std::size_t outer = bound_.size();
      if (peek().kind != TokenKind::RBrack) {
        for (;;) {
          const Token v = expect(TokenKind::Ident, "a rule variable");
          if (peek().kind != TokenKind::Colon) {
            failed_ = true;
            throw ParseError("rule variable '" + std::string(lex_.text(v)) +
                                 "' needs a type annotation ('" + std::string(lex_.text(v)) + " : A')",
                             v.begin, v.line, v.column);
          }
          take();
          ST ty = parse_term();
          rule.ctx.push_back({lex_.text(v), std::move(ty)});
          bound_.push_back(lex_.text(v));
          if (peek().kind == TokenKind::Comma) {
            take();
            continue;
          }
          break;
        }
      }
      expect(TokenKind::RBrack, "',' or ']'");
      const Token lhs_tok = peek();
      ST lhs = parse_app();
      auto pattern = pattern_from_term(lhs, rule.ctx.size());
      if (!pattern || !pattern->as_head()) {
        failed_ = true;
        throw ParseError("left-hand side must be a constant applied to first-order patterns", lhs_tok.begin,
                         lhs_tok.line, lhs_tok.column);
      }
      rule.lhs = std::move(*pattern);
      expect(TokenKind::LongArrow, "'-->'");
      rule.rhs = parse_term();
      expect(TokenKind::Dot, "'.'");
      bound_.resize(outer);
      cmd.item = std::move(rule);
    } else {
      fail_at(first, "a command");
    }
  } catch (ParseError& e) {
    failed_ = true;
    e.command = index;
    throw;
  }
  cmd.pos.end = last_end_;
  return cmd;
}

std::vector<Command<Borrowed>> parse_all(std::string_view input) {
  Parser p(input);
  std::vector<Command<Borrowed>> out;
  while (auto c = p.next()) out.push_back(std::move(*c));
  return out;
}

}  // namespace lpc
