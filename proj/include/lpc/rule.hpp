#pragma once

// First-order rewrite rules `c p1 ... pn --> t` over a typed local context.
// Pattern variables are context levels (0 = first context entry); in terms
// built over the context they appear as de Bruijn indices `n - 1 - level`.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lpc/error.hpp"
#include "lpc/term.hpp"

namespace lpc {

template <class C>
struct Pattern {
  struct MVar {
    std::size_t level;
  };
  struct Head {
    C symbol;
    std::vector<Pattern> args;
  };

  std::variant<MVar, Head> node;

  static Pattern mvar(std::size_t level) { return Pattern{MVar{level}}; }
  static Pattern head(C c, std::vector<Pattern> args = {}) {
    return Pattern{Head{std::move(c), std::move(args)}};
  }

  const MVar* as_mvar() const { return std::get_if<MVar>(&node); }
  const Head* as_head() const { return std::get_if<Head>(&node); }

  friend bool operator==(const Pattern& a, const Pattern& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* x = a.as_mvar()) return x->level == b.as_mvar()->level;
    const auto& x = *a.as_head();
    const auto& y = *b.as_head();
    return x.symbol == y.symbol && x.args == y.args;
  }
};

template <class T>
struct ContextEntry {
  Name name;
  T type;
};

/// Entry k's type is a term over entries 0..k-1.
template <class T>
using LocalContext = std::vector<ContextEntry<T>>;

template <class C, class P>
struct Rule {
  LocalContext<Term<C, P>> ctx;
  Pattern<C> lhs;
  Term<C, P> rhs;

  const C& head() const { return lhs.as_head()->symbol; }
  std::size_t arity() const { return lhs.as_head()->args.size(); }
};

enum class ViolationKind { HeadlessLhs, NonLinearPattern, UnboundRhsVariable, VariableOutOfRange };

struct RuleViolation {
  ViolationKind kind;
  std::size_t level = 0;
  std::string variable;

  std::string message() const {
    switch (kind) {
      case ViolationKind::HeadlessLhs:
        return "left-hand side of a rule must start with a constant";
      case ViolationKind::NonLinearPattern:
        return "pattern variable '" + variable + "' occurs more than once (non-linear pattern)";
      case ViolationKind::UnboundRhsVariable:
        return "variable '" + variable + "' of the right-hand side does not occur in the left-hand side";
      case ViolationKind::VariableOutOfRange:
        return "variable out of range of the rule context";
    }
    return {};
  }
};

class RuleError : public Error {
 public:
  explicit RuleError(RuleViolation v) : Error(v.message()), violation(std::move(v)) {}
  RuleViolation violation;
};

namespace detail {

template <class C>
bool collect_mvars(const Pattern<C>& p, std::vector<int>& seen, std::optional<std::size_t>& dup,
                   std::optional<std::size_t>& out_of_range) {
  if (const auto* v = p.as_mvar()) {
    if (v->level >= seen.size()) {
      out_of_range = v->level;
      return false;
    }
    if (seen[v->level]++ > 0 && !dup) dup = v->level;
    return true;
  }
  for (const auto& a : p.as_head()->args)
    if (!collect_mvars(a, seen, dup, out_of_range)) return false;
  return true;
}

}  // namespace detail

/// Checks head form, left-linearity and FV(rhs) ⊆ FV(lhs).
template <class C, class P>
std::optional<RuleViolation> validate_rule(const Rule<C, P>& r) {
  const std::size_t n = r.ctx.size();
  if (!r.lhs.as_head()) return RuleViolation{ViolationKind::HeadlessLhs, 0, {}};
  std::vector<int> seen(n, 0);
  std::optional<std::size_t> dup, oor;
  if (!detail::collect_mvars(r.lhs, seen, dup, oor))
    return RuleViolation{ViolationKind::VariableOutOfRange, oor.value_or(0), {}};
  if (dup) return RuleViolation{ViolationKind::NonLinearPattern, *dup, r.ctx[*dup].name};

  std::optional<RuleViolation> bad;
  auto f = [&](std::size_t i, std::size_t depth) -> std::optional<Term<C, P>> {
    if (bad || i < depth) return std::nullopt;
    const std::size_t j = i - depth;
    if (j >= n) {
      bad = RuleViolation{ViolationKind::VariableOutOfRange, j, {}};
    } else if (seen[n - 1 - j] == 0) {
      bad = RuleViolation{ViolationKind::UnboundRhsVariable, n - 1 - j, r.ctx[n - 1 - j].name};
    }
    return std::nullopt;
  };
  map_vars(r.rhs, 0, f);
  return bad;
}

/// The left-hand side as a term over the rule context of length `ctx_len`.
/// Throws std::out_of_range on a level outside the context.
template <class Tm, class C>
Tm pattern_to_term(const Pattern<C>& p, std::size_t ctx_len) {
  if (const auto* v = p.as_mvar()) {
    if (v->level >= ctx_len) throw std::out_of_range("pattern variable level out of range");
    return Tm::var(ctx_len - 1 - v->level);
  }
  const auto& h = *p.as_head();
  std::vector<Tm> args;
  args.reserve(h.args.size());
  for (const auto& a : h.args) args.push_back(pattern_to_term<Tm>(a, ctx_len));
  return Tm::app(Tm::constant(h.symbol), std::move(args));
}

/// Inverse of pattern_to_term; nullopt if `t` is not a first-order pattern.
template <class C, class P>
std::optional<Pattern<C>> pattern_from_term(const Term<C, P>& t, std::size_t ctx_len) {
  if (auto i = t.as_var()) {
    if (*i >= ctx_len) return std::nullopt;
    return Pattern<C>::mvar(ctx_len - 1 - *i);
  }
  if (const C* c = t.as_const()) return Pattern<C>::head(*c);
  const auto* a = t.as_app();
  if (!a || !a->head.as_const()) return std::nullopt;
  std::vector<Pattern<C>> args;
  for (const auto& x : a->args) {
    auto p = pattern_from_term(x, ctx_len);
    if (!p) return std::nullopt;
    args.push_back(std::move(*p));
  }
  return Pattern<C>::head(*a->head.as_const(), std::move(args));
}

}  // namespace lpc
