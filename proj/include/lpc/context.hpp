#pragma once

// The global context: symbol -> (declared type, rules headed by the symbol).
// Values are persistent; every operation returns a new context and leaves
// its argument untouched, and copying is a constant-cost pointer copy.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "lpc/error.hpp"
#include "lpc/persistent_map.hpp"
#include "lpc/rule.hpp"
#include "lpc/symbol.hpp"
#include "lpc/term.hpp"

namespace lpc {

/// Kernel terms and rules: constants are interned symbols.
template <class P>
using KTerm = Term<Symbol, P>;
template <class P>
using KRule = Rule<Symbol, P>;
template <class P>
using KLocalContext = LocalContext<KTerm<P>>;

struct SymbolBits {
  std::uint64_t operator()(Symbol s) const { return s.id(); }
};

template <class P>
struct Declared {
  KTerm<P> type;
  std::shared_ptr<const std::vector<KRule<P>>> rules;
};

template <class P>
class GlobalContext {
  using Map = PersistentMap<Symbol, Declared<P>, SymbolBits>;

 public:
  GlobalContext() = default;

  GlobalContext declare(Symbol c, KTerm<P> ty) const {
    if (map_.contains(c)) throw ContextError(ContextError::Kind::Redeclaration, c.name());
    GlobalContext out(*this);
    out.map_ = map_.set(c, Declared<P>{std::move(ty), empty_rules()});
    return out;
  }

  /// Appends `r` after the rules already stored for its head.
  GlobalContext add_rule(KRule<P> r) const {
    const Symbol c = r.head();
    const auto* d = map_.find(c);
    if (!d) throw ContextError(ContextError::Kind::UndeclaredHead, c.name());
    auto rules = std::make_shared<std::vector<KRule<P>>>(*d->rules);
    rules->push_back(std::move(r));
    GlobalContext out(*this);
    out.map_ = map_.set(c, Declared<P>{d->type, std::move(rules)});
    ++out.rule_count_;
    return out;
  }

  const KTerm<P>& lookup_type(Symbol c) const {
    const auto* d = map_.find(c);
    if (!d) throw ContextError(ContextError::Kind::UnknownSymbol, c.name());
    return d->type;
  }

  /// Rules headed by `c` in insertion order; empty for symbols without rules.
  std::span<const KRule<P>> lookup_rules(Symbol c) const {
    const auto* d = map_.find(c);
    if (!d) return {};
    return {d->rules->data(), d->rules->size()};
  }

  bool contains(Symbol c) const { return map_.contains(c); }
  const Declared<P>* find(Symbol c) const { return map_.find(c); }

  GlobalContext snapshot() const { return *this; }

  std::size_t symbol_count() const { return map_.size(); }
  std::size_t rule_count() const { return rule_count_; }

  template <class F>
  void for_each(F&& f) const {
    map_.for_each(f);
  }

 private:
  static std::shared_ptr<const std::vector<KRule<P>>> empty_rules() {
    static const auto empty = std::make_shared<const std::vector<KRule<P>>>();
    return empty;
  }

  Map map_;
  std::size_t rule_count_ = 0;
};

template <class P>
GlobalContext<P> declare(const GlobalContext<P>& g, Symbol c, KTerm<P> ty) {
  return g.declare(c, std::move(ty));
}
template <class P>
GlobalContext<P> add_rule(const GlobalContext<P>& g, KRule<P> r) {
  return g.add_rule(std::move(r));
}
template <class P>
const KTerm<P>& lookup_type(const GlobalContext<P>& g, Symbol c) {
  return g.lookup_type(c);
}
template <class P>
std::span<const KRule<P>> lookup_rules(const GlobalContext<P>& g, Symbol c) {
  return g.lookup_rules(c);
}
template <class P>
GlobalContext<P> snapshot(const GlobalContext<P>& g) {
  return g.snapshot();
}

}  // namespace lpc
