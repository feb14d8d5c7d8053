#include <doctest.h>

#include <functional>

#include "lpc/corpus.hpp"
#include "lpc/parse.hpp"
#include "lpc/print.hpp"
#include "support/theory.hpp"

using namespace lpc;

namespace {

using B = STerm<Borrowed>;

std::vector<TokenKind> kinds(std::string_view s) {
  std::vector<TokenKind> out;
  for (const Token& t : lex(s)) out.push_back(t.kind);
  return out;
}

std::string print_command(const Command<Borrowed>& c) {
  if (const auto* d = std::get_if<Declaration<Borrowed>>(&c.item))
    return std::string(d->name) + " : " + show(d->type) + ".";
  if (const auto* d = std::get_if<Definition<Borrowed>>(&c.item))
    return "def " + std::string(d->name) + " : " + show(d->type) + " := " + show(d->body) + ".";
  const auto& r = std::get<RuleCommand<Borrowed>>(c.item);
  std::string out = "[";
  std::vector<std::string> names;
  for (std::size_t i = 0; i < r.ctx.size(); ++i) {
    if (i) out += ", ";
    out += std::string(r.ctx[i].name) + " : " + show(r.ctx[i].type, names);
    names.emplace_back(r.ctx[i].name);
  }
  out += "] " + show(pattern_to_term<B>(r.lhs, r.ctx.size()), names) + " --> " + show(r.rhs, names) + ".";
  return out;
}

template <class C1, class C2>
bool same_command(const Command<C1>& a, const Command<C2>& b) {
  const auto own = [](const auto& s) { return std::string(s); };
  const Command<Owned> x = map_command<Owned>(a, own);
  const Command<Owned> y = map_command<Owned>(b, own);
  if (x.item.index() != y.item.index()) return false;
  if (const auto* d = std::get_if<Declaration<Owned>>(&x.item)) {
    const auto& e = std::get<Declaration<Owned>>(y.item);
    return d->name == e.name && d->type == e.type;
  }
  if (const auto* d = std::get_if<Definition<Owned>>(&x.item)) {
    const auto& e = std::get<Definition<Owned>>(y.item);
    return d->name == e.name && d->type == e.type && d->body == e.body;
  }
  const auto& r = std::get<RuleCommand<Owned>>(x.item);
  const auto& s = std::get<RuleCommand<Owned>>(y.item);
  if (r.ctx.size() != s.ctx.size()) return false;
  for (std::size_t i = 0; i < r.ctx.size(); ++i)
    if (r.ctx[i].name != s.ctx[i].name || !(r.ctx[i].type == s.ctx[i].type)) return false;
  return r.lhs == s.lhs && r.rhs == s.rhs;
}

std::vector<std::string> sample_sources() {
  std::vector<std::string> out{std::string(test::example1), test::peano_text()};
  using namespace corpus;
  out.push_back(generate({Family::PeanoHeavy, 20, 1, 8}));
  out.push_back(generate({Family::Wide, 200, 2}));
  out.push_back(generate({Family::Planted, 30, 3, 16, std::nullopt, true}));
  return out;
}

template <class F>
void for_each_constant(const B& t, F&& f) {
  switch (t.tag()) {
    case Tag::Const:
      f(*t.as_const());
      return;
    case Tag::Comb:
      break;
    default:
      return;
  }
  if (auto a = t.as_app()) {
    for_each_constant(a->head, f);
    for (const auto& x : a->args) for_each_constant(x, f);
  } else if (auto l = t.as_lam()) {
    if (l->ann) for_each_constant(*l->ann, f);
    for_each_constant(l->body, f);
  } else {
    for_each_constant(t.as_pi()->dom, f);
    for_each_constant(t.as_pi()->cod, f);
  }
}

template <class F>
void for_each_constant(const Pattern<Borrowed>& p, F&& f) {
  if (auto h = p.as_head()) {
    f(h->symbol);
    for (const auto& a : h->args) for_each_constant(a, f);
  }
}

template <class F>
void for_each_constant(const Command<Borrowed>& c, F&& f) {
  if (const auto* d = std::get_if<Declaration<Borrowed>>(&c.item)) {
    f(d->name);
    for_each_constant(d->type, f);
  } else if (const auto* d = std::get_if<Definition<Borrowed>>(&c.item)) {
    f(d->name);
    for_each_constant(d->type, f);
    for_each_constant(d->body, f);
  } else {
    const auto& r = std::get<RuleCommand<Borrowed>>(c.item);
    for (const auto& v : r.ctx) for_each_constant(v.type, f);
    for_each_constant(r.lhs, f);
    for_each_constant(r.rhs, f);
  }
}

}  // namespace

TEST_SUITE("parse") {
  TEST_CASE("lexer examples") {
    using K = TokenKind;
    const auto toks = lex("prop : Type.");
    REQUIRE(toks.size() == 4);
    CHECK(kinds("prop : Type.") == std::vector<K>{K::Ident, K::Colon, K::KwType, K::Dot});
    Lexer lx("prop : Type.");
    CHECK(lx.text(lx.next()) == "prop");
    CHECK(lex("").empty());
    const auto nested = lex("(; a (; b ;) c ;) x");
    REQUIRE(nested.size() == 1);
    CHECK(nested[0].kind == K::Ident);
    CHECK(nested[0].begin == 18);
    CHECK(kinds("--> -> => := : [ ] , ( ) def Kind") ==
          std::vector<K>{K::LongArrow, K::Arrow, K::FatArrow, K::ColonEq, K::Colon, K::LBrack, K::RBrack,
                         K::Comma, K::LPar, K::RPar, K::KwDef, K::KwKind});
    CHECK_THROWS_AS(lex("(; open"), ParseError);
    CHECK_THROWS_AS(lex("a $ b"), ParseError);
  }

  TEST_CASE("positions") {
    const auto toks = lex("a\n  bc");
    REQUIRE(toks.size() == 2);
    CHECK(toks[1].line == 2);
    CHECK(toks[1].column == 3);
  }

  TEST_CASE("id : A -> A borrows three distinct ranges") {
    const std::string src = "id : A -> A.";
    Parser p(src);
    auto cmd = p.next();
    REQUIRE(cmd);
    const auto& d = std::get<Declaration<Borrowed>>(cmd->item);
    const auto* pi = d.type.as_pi();
    REQUIRE(pi);
    const Borrowed a1 = *pi->dom.as_const();
    const Borrowed a2 = *pi->cod.as_const();
    CHECK(d.name == "id");
    CHECK(a1 == "A");
    CHECK(a2 == "A");
    CHECK(d.name.data() == src.data());
    CHECK(a1.data() == src.data() + 5);
    CHECK(a2.data() == src.data() + 10);
    CHECK_FALSE(p.next());
  }

  TEST_CASE("dependent product uses Var(0)") {
    Parser p("imprefl : x : prop -> prf (impl x x).");
    const auto d = std::get<Declaration<Borrowed>>(p.next()->item);
    const B want = B::pi("x", B::constant("prop"),
                         B::app(B::constant("prf"), {B::app(B::constant("impl"), {B::var(0), B::var(0)})}));
    CHECK(d.type == want);
  }

  TEST_CASE("rule command") {
    Parser p("[x : prop, y : prop] prf (impl x y) --> prf x -> prf y.");
    const auto cmd = p.next();
    const auto& r = std::get<RuleCommand<Borrowed>>(cmd->item);
    REQUIRE(r.ctx.size() == 2);
    CHECK(r.ctx[0].name == "x");
    CHECK(r.ctx[1].type == B::constant("prop"));
    using Pat = Pattern<Borrowed>;
    CHECK(r.lhs == Pat::head("prf", {Pat::head("impl", {Pat::mvar(0), Pat::mvar(1)})}));
    CHECK(r.rhs == arrow(B::app(B::constant("prf"), {B::var(1)}), B::app(B::constant("prf"), {B::var(0)})));
  }

  TEST_CASE("definitions") {
    Parser p("def two : nat := succ (succ 0).");
    const auto cmd = p.next();
    const auto& d = std::get<Definition<Borrowed>>(cmd->item);
    CHECK(d.name == "two");
    CHECK(d.body == B::app(B::constant("succ"), {B::app(B::constant("succ"), {B::constant("0")})}));
  }

  TEST_CASE("precedence") {
    Parser p("t : a -> b -> c.\nu : f a b.\nv : (a -> b) -> c.\nw : x : a => f x y.\n");
    const auto t = std::get<Declaration<Borrowed>>(p.next()->item).type;
    REQUIRE(t.as_pi());
    CHECK(t.as_pi()->cod.as_pi());
    CHECK(t == arrow(B::constant("a"), arrow(B::constant("b"), B::constant("c"))));
    const auto u = std::get<Declaration<Borrowed>>(p.next()->item).type;
    CHECK(u == B::app(B::constant("f"), {B::constant("a"), B::constant("b")}));
    const auto v = std::get<Declaration<Borrowed>>(p.next()->item).type;
    CHECK(v.as_pi()->dom.as_pi());
    const auto w = std::get<Declaration<Borrowed>>(p.next()->item).type;
    CHECK(w == B::lam("x", B::constant("a"), B::app(B::constant("f"), {B::var(0), B::constant("y")})));
  }

  TEST_CASE("syntax errors") {
    const auto error_of = [](std::string_view s) {
      try {
        parse_all(s);
      } catch (const ParseError& e) {
        return e;
      }
      FAIL("no error");
      return ParseError("", 0, 0, 0);
    };
    CHECK(error_of("a : Kind.").command == 1);
    CHECK(error_of("a : Type.\n[x] f x --> x.").command == 2);
    CHECK(std::string(error_of("a : Type.\n[x] f x --> x.").what()).find("type") != std::string::npos);
    const auto e = error_of("a : Type.\nb : (a.");
    CHECK(e.command == 2);
    CHECK(e.line == 2);
    CHECK(error_of("a : Type. (; x").command == 2);
    CHECK(error_of("[x : a] x --> x.").command == 1);  // headless lhs
    CHECK(error_of("[x : a] f (y => y) --> x.").command == 1);
    CHECK(error_of("a Type.").column == 3);
  }

  TEST_CASE("parsing is lazy") {
    Parser p("a : Type.\nb : ) .\n");
    auto first = p.next();
    REQUIRE(first);
    CHECK(first->index == 1);
    CHECK_THROWS_AS(p.next(), ParseError);
  }

  TEST_CASE("own_command") {
    const std::string src = "id : A -> A.";
    const auto cmd = parse_all(src).front();
    const Command<Owned> owned = own_command(cmd);
    const auto& d = std::get<Declaration<Owned>>(owned.item);
    CHECK(d.name == "id");
    CHECK(*d.type.as_pi()->dom.as_const() == "A");
    CHECK(same_command(cmd, owned));
    CHECK(same_command(own_command(owned), owned));
    const auto sorts = parse_all("t : Type -> Type.").front();
    CHECK(same_command(own_command(sorts), sorts));
  }

  TEST_CASE("zero-copy over the corpus") {
    for (const std::string& src : sample_sources()) {
      const char* lo = src.data();
      const char* hi = src.data() + src.size();
      std::size_t constants = 0;
      bool inside = true;
      for (const auto& cmd : parse_all(src)) for_each_constant(cmd, [&](Borrowed s) {
          ++constants;
          inside = inside && s.data() >= lo && s.data() + s.size() <= hi;
        });
      CHECK(inside);
      CHECK(constants > 0);
    }
  }

  TEST_CASE("print and reparse round trip") {
    for (const std::string& src : sample_sources()) {
      std::size_t n = 0;
      for (const auto& cmd : parse_all(src)) {
        const std::string printed = print_command(cmd);
        const auto again = parse_all(printed);
        REQUIRE(again.size() == 1);
        CHECK_MESSAGE(same_command(cmd, again.front()), printed);
        ++n;
      }
      CHECK(n >= 6);
    }
  }
}
