#pragma once

// The sharer turns parsed commands into kernel commands: every constant is
// replaced by its canonical symbol and compound terms are rebuilt under the
// kernel's sharing policy. Only constants get shared; equal compound
// subterms stay distinct.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "lpc/context.hpp"
#include "lpc/error.hpp"
#include "lpc/parse.hpp"
#include "lpc/print.hpp"
#include "lpc/symbol.hpp"

namespace lpc {

class ScopeError : public Error {
 public:
  explicit ScopeError(std::string name)
      : Error("unknown constant '" + name + "'"), name(std::move(name)) {}
  std::string name;
};

template <class P>
struct KDeclaration {
  Symbol name;
  KTerm<P> type;
};

/// `name : type` together with the rule `name --> body`.
template <class P>
struct KDefinition {
  Symbol name;
  KTerm<P> type;
  KRule<P> rule;
};

template <class P>
struct KRuleCommand {
  KRule<P> rule;
};

template <class P>
struct KCommand {
  std::variant<KDeclaration<P>, KDefinition<P>, KRuleCommand<P>> item;
  std::size_t index = 0;
  SourcePos pos;
};

inline Symbol intern(SymbolTable& tbl, std::string_view text) { return tbl.intern(text); }

template <class P, class C>
KTerm<P> share_term(const SymbolTable& tbl, const STerm<C>& t) {
  return transform<Symbol, P>(t, [&](const C& c) {
    const std::string_view text = constant_text(c);
    if (auto s = tbl.find(text)) return *s;
    throw ScopeError(std::string(text));
  });
}

template <class C>
Pattern<Symbol> share_pattern(const SymbolTable& tbl, const Pattern<C>& p) {
  return map_pattern<Symbol>(p, [&](const C& c) {
    const std::string_view text = constant_text(c);
    if (auto s = tbl.find(text)) return *s;
    throw ScopeError(std::string(text));
  });
}

/// Works on borrowed and owned commands alike. A declared name is registered
/// after its type is resolved; a definition's name is registered before its
/// body is resolved.
template <class P, class C>
KCommand<P> share_command(SymbolTable& tbl, const Command<C>& c, std::size_t file = 0) {
  KCommand<P> out;
  out.index = c.index;
  out.pos = c.pos;
  if (const auto* d = std::get_if<Declaration<C>>(&c.item)) {
    KTerm<P> ty = share_term<P, C>(tbl, d->type);
    const Symbol s = tbl.intern(constant_text(d->name), file, c.pos.begin);
    out.item = KDeclaration<P>{s, std::move(ty)};
  } else if (const auto* d = std::get_if<Definition<C>>(&c.item)) {
    KTerm<P> ty = share_term<P, C>(tbl, d->type);
    const Symbol s = tbl.intern(constant_text(d->name), file, c.pos.begin);
    KTerm<P> body = share_term<P, C>(tbl, d->body);
    out.item = KDefinition<P>{s, std::move(ty), KRule<P>{{}, Pattern<Symbol>::head(s), std::move(body)}};
  } else {
    const auto& r = std::get<RuleCommand<C>>(c.item);
    KRule<P> rule;
    rule.ctx.reserve(r.ctx.size());
    for (const auto& v : r.ctx)
      rule.ctx.push_back({Name(constant_text(v.name)), share_term<P, C>(tbl, v.type)});
    rule.lhs = share_pattern(tbl, r.lhs);
    rule.rhs = share_term<P, C>(tbl, r.rhs);
    out.item = KRuleCommand<P>{std::move(rule)};
  }
  return out;
}

}  // namespace lpc
