#include <doctest.h>

#include <random>
#include <string>

#include "lpc/rule.hpp"
#include "lpc/term.hpp"
#include "support/theory.hpp"

using namespace lpc;

namespace {

using T = Term<std::string, LocalShared>;
using R = Rule<std::string, LocalShared>;
using Pat = Pattern<std::string>;

LocalContext<T> ctx_of(std::initializer_list<const char*> names) {
  LocalContext<T> c;
  for (const char* n : names) c.push_back({n, T::constant("prop")});
  return c;
}

// A linear pattern over `n` variables, each used at most once.
Pat random_linear(std::mt19937_64& rng, std::vector<std::size_t>& unused, int depth) {
  if (!unused.empty() && (depth == 0 || rng() % 3 == 0)) {
    const std::size_t k = rng() % unused.size();
    const std::size_t level = unused[k];
    unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(k));
    return Pat::mvar(level);
  }
  std::vector<Pat> args;
  if (depth > 0)
    for (std::size_t i = 0, m = rng() % 3; i < m; ++i) args.push_back(random_linear(rng, unused, depth - 1));
  return Pat::head(std::string(1, static_cast<char>('f' + rng() % 3)), std::move(args));
}

bool spine_flat(const T& t) {
  if (auto a = t.as_app()) {
    if (a->head.as_app() || a->args.empty()) return false;
    for (const auto& x : a->args)
      if (!spine_flat(x)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("rule") {
  TEST_CASE("rule 4 of the implication theory is valid") {
    R r;
    r.ctx = ctx_of({"x", "y"});
    r.lhs = Pat::head("prf", {Pat::head("impl", {Pat::mvar(0), Pat::mvar(1)})});
    r.rhs = arrow(T::app(T::constant("prf"), {T::var(1)}), T::app(T::constant("prf"), {T::var(0)}));
    CHECK_FALSE(validate_rule(r).has_value());
    CHECK(r.head() == "prf");
    CHECK(r.arity() == 1);
  }

  TEST_CASE("non-linear lhs") {
    R r;
    r.ctx = ctx_of({"x"});
    r.lhs = Pat::head("c", {Pat::mvar(0), Pat::mvar(0)});
    r.rhs = T::var(0);
    auto v = validate_rule(r);
    REQUIRE(v);
    CHECK(v->kind == ViolationKind::NonLinearPattern);
    CHECK(v->variable == "x");
  }

  TEST_CASE("rhs variable missing from lhs") {
    R r;
    r.ctx = ctx_of({"x", "y"});
    r.lhs = Pat::head("c", {Pat::mvar(0)});
    r.rhs = T::var(0);  // y
    auto v = validate_rule(r);
    REQUIRE(v);
    CHECK(v->kind == ViolationKind::UnboundRhsVariable);
    CHECK(v->variable == "y");
    CHECK(v->level == 1);
  }

  TEST_CASE("headless lhs and out-of-range variables") {
    R r;
    r.ctx = ctx_of({"x"});
    r.lhs = Pat::mvar(0);
    r.rhs = T::var(0);
    REQUIRE(validate_rule(r));
    CHECK(validate_rule(r)->kind == ViolationKind::HeadlessLhs);

    r.lhs = Pat::head("c", {Pat::mvar(3)});
    CHECK(validate_rule(r)->kind == ViolationKind::VariableOutOfRange);

    r.lhs = Pat::head("c", {Pat::mvar(0)});
    r.rhs = T::var(4);
    CHECK(validate_rule(r)->kind == ViolationKind::VariableOutOfRange);

    // Bound variables of the rhs are not pattern variables.
    r.rhs = T::lam("z", T::type(), T::app(T::var(0), {T::var(1)}));
    CHECK_FALSE(validate_rule(r));
  }

  TEST_CASE("pattern_to_term examples") {
    const Pat p = Pat::head("prf", {Pat::head("impl", {Pat::mvar(0), Pat::mvar(1)})});
    const T t = pattern_to_term<T>(p, 2);
    CHECK(t == T::app(T::constant("prf"), {T::app(T::constant("impl"), {T::var(1), T::var(0)})}));
    CHECK(pattern_to_term<T>(Pat::head("c"), 0) == T::constant("c"));
    CHECK_THROWS_AS(pattern_to_term<T>(Pat::mvar(2), 2), std::out_of_range);
  }

  TEST_CASE("pattern round trip on random linear patterns") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 3000; ++i) {
      const std::size_t n = rng() % 5;
      std::vector<std::size_t> unused(n);
      for (std::size_t k = 0; k < n; ++k) unused[k] = k;
      const Pat p = random_linear(rng, unused, 4);
      const T t = pattern_to_term<T>(p, n);
      CHECK(spine_flat(t));
      auto back = pattern_from_term(t, n);
      REQUIRE(back);
      CHECK(*back == p);
    }
  }

  TEST_CASE("every rule of the sample theories validates") {
    for (const std::string& text : {std::string(test::example1), test::peano_text()}) {
      Parser parser(text);
      std::size_t rules = 0;
      while (auto cmd = parser.next()) {
        if (auto* r = std::get_if<RuleCommand<Borrowed>>(&cmd->item)) {
          Rule<Borrowed, Unshared> rule;
          for (const auto& v : r->ctx) rule.ctx.push_back({std::string(v.name), v.type});
          rule.lhs = r->lhs;
          rule.rhs = r->rhs;
          CHECK_FALSE(validate_rule(rule));
          ++rules;
        }
      }
      CHECK(rules > 0);
    }
  }
}
