#include "lpc/parse.hpp"

namespace lpc {

const char* token_name(TokenKind k) {
  switch (k) {
    case TokenKind::Ident:
      return "identifier";
    case TokenKind::Colon:
      return "':'";
    case TokenKind::ColonEq:
      return "':='";
    case TokenKind::Dot:
      return "'.'";
    case TokenKind::Arrow:
      return "'->'";
    case TokenKind::FatArrow:
      return "'=>'";
    case TokenKind::LongArrow:
      return "'-->'";
    case TokenKind::LBrack:
      return "'['";
    case TokenKind::RBrack:
      return "']'";
    case TokenKind::Comma:
      return "','";
    case TokenKind::LPar:
      return "'('";
    case TokenKind::RPar:
      return "')'";
    case TokenKind::KwDef:
      return "'def'";
    case TokenKind::KwType:
      return "'Type'";
    case TokenKind::KwKind:
      return "'Kind'";
    case TokenKind::End:
      return "end of input";
  }
  return "?";
}

namespace {

bool ident_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '!' || c == '?' || c == '\'' || c >= 0x80;
}

}  // namespace

void Lexer::fail(const std::string& msg, std::size_t offset, std::size_t line, std::size_t col) const {
  throw ParseError(msg, offset, line, col);
}

void Lexer::advance() {
  if (in_[pos_] == '\n') {
    ++line_;
    line_start_ = pos_ + 1;
  }
  ++pos_;
}

void Lexer::skip_trivia() {
  for (;;) {
    while (pos_ < in_.size() && (in_[pos_] == ' ' || in_[pos_] == '\t' || in_[pos_] == '\n' ||
                                 in_[pos_] == '\r'))
      advance();
    if (pos_ + 1 < in_.size() && in_[pos_] == '(' && in_[pos_ + 1] == ';') {
      const std::size_t start = pos_, line = line_, col = pos_ - line_start_ + 1;
      std::size_t depth = 0;
      do {
        if (pos_ + 1 < in_.size() && in_[pos_] == '(' && in_[pos_ + 1] == ';') {
          ++depth;
          pos_ += 2;
        } else if (pos_ + 1 < in_.size() && in_[pos_] == ';' && in_[pos_ + 1] == ')') {
          --depth;
          pos_ += 2;
        } else if (pos_ < in_.size()) {
          advance();
        } else {
          fail("unterminated comment", start, line, col);
        }
      } while (depth > 0);
      continue;
    }
    return;
  }
}

Token Lexer::next() {
  skip_trivia();
  Token t;
  t.begin = static_cast<std::uint32_t>(pos_);
  t.line = static_cast<std::uint32_t>(line_);
  t.column = static_cast<std::uint32_t>(pos_ - line_start_ + 1);
  if (pos_ >= in_.size()) {
    t.kind = TokenKind::End;
    t.end = t.begin;
    return t;
  }
  auto rest = in_.substr(pos_);
  auto single = [&](TokenKind k, std::size_t len) {
    t.kind = k;
    pos_ += len;
  };
  const char c = in_[pos_];
  if (rest.starts_with("-->")) {
    single(TokenKind::LongArrow, 3);
  } else if (rest.starts_with("->")) {
    single(TokenKind::Arrow, 2);
  } else if (rest.starts_with("=>")) {
    single(TokenKind::FatArrow, 2);
  } else if (rest.starts_with(":=")) {
    single(TokenKind::ColonEq, 2);
  } else if (c == ':') {
    single(TokenKind::Colon, 1);
  } else if (c == '.') {
    single(TokenKind::Dot, 1);
  } else if (c == '[') {
    single(TokenKind::LBrack, 1);
  } else if (c == ']') {
    single(TokenKind::RBrack, 1);
  } else if (c == ',') {
    single(TokenKind::Comma, 1);
  } else if (c == '(') {
    single(TokenKind::LPar, 1);
  } else if (c == ')') {
    single(TokenKind::RPar, 1);
  } else if (ident_char(static_cast<unsigned char>(c))) {
    std::size_t e = pos_;
    while (e < in_.size() && ident_char(static_cast<unsigned char>(in_[e]))) ++e;
    const auto word = in_.substr(pos_, e - pos_);
    t.kind = word == "Type" ? TokenKind::KwType
             : word == "Kind" ? TokenKind::KwKind
             : word == "def"  ? TokenKind::KwDef
                              : TokenKind::Ident;
    pos_ = e;
  } else {
    fail(std::string("unexpected character '") + c + "'", pos_, line_, pos_ - line_start_ + 1);
  }
  t.end = static_cast<std::uint32_t>(pos_);
  return t;
}

std::vector<Token> lex(std::string_view input) {
  Lexer l(input);
  std::vector<Token> out;
  for (Token t = l.next(); t.kind != TokenKind::End; t = l.next()) out.push_back(t);
  return out;
}

}  // namespace lpc
