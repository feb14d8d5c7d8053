#pragma once

// Two-layer terms: atomic constructors (Kind, Type, Const, Var) are stored
// inline, compound constructors live behind one policy-selected reference
// (`Comb`). Bound variables are de Bruijn indices, 0 = innermost binder.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "lpc/ptr.hpp"

namespace lpc {

/// Binder display hint. Never consulted by equality.
using Name = std::string;

template <class Tm>
struct App {
  Tm head;
  std::vector<Tm> args;
};

template <class Tm>
struct Lam {
  Name name;
  std::optional<Tm> ann;
  Tm body;
};

template <class Tm>
struct Pi {
  Name name;
  Tm dom;
  Tm cod;
};

template <class Tm>
using TermC = std::variant<App<Tm>, Lam<Tm>, Pi<Tm>>;

enum class Tag : std::uint8_t { Kind, Type, Const, Var, Comb };

template <class C, class P>
class Term {
  struct KindS {};
  struct TypeS {};
  struct ConstS {
    C c;
  };
  struct VarS {
    std::size_t index;
  };

 public:
  using constant_type = C;
  using policy = P;
  using Comb = TermC<Term>;
  using CombRef = typename P::template Ptr<Comb>;

  Term() : v_(TypeS{}) {}

  static Term kind() { return Term(KindS{}); }
  static Term type() { return Term(TypeS{}); }
  static Term constant(C c) { return Term(ConstS{std::move(c)}); }
  static Term var(std::size_t i) { return Term(VarS{i}); }
  static Term comb(Comb c) { return Term(CombRef::make(std::move(c))); }
  static Term comb_ref(CombRef r) { return Term(std::move(r)); }

  /// Spine application; flattens an App head and collapses empty argument lists.
  static Term app(Term head, std::vector<Term> args) {
    if (args.empty()) return head;
    if (const auto* a = head.as_app()) {
      std::vector<Term> all;
      all.reserve(a->args.size() + args.size());
      all.insert(all.end(), a->args.begin(), a->args.end());
      for (auto& x : args) all.push_back(std::move(x));
      return comb(App<Term>{a->head, std::move(all)});
    }
    return comb(App<Term>{std::move(head), std::move(args)});
  }
  static Term lam(Name n, std::optional<Term> ann, Term body) {
    return comb(Lam<Term>{std::move(n), std::move(ann), std::move(body)});
  }
  static Term pi(Name n, Term dom, Term cod) {
    return comb(Pi<Term>{std::move(n), std::move(dom), std::move(cod)});
  }

  Tag tag() const { return static_cast<Tag>(v_.index()); }
  bool is_kind() const { return tag() == Tag::Kind; }
  bool is_type() const { return tag() == Tag::Type; }
  bool is_sort() const { return tag() == Tag::Kind || tag() == Tag::Type; }
  bool is_atomic() const { return tag() != Tag::Comb; }

  const C* as_const() const {
    const auto* s = std::get_if<ConstS>(&v_);
    return s ? &s->c : nullptr;
  }
  std::optional<std::size_t> as_var() const {
    if (const auto* s = std::get_if<VarS>(&v_)) return s->index;
    return std::nullopt;
  }
  const CombRef* as_comb_ref() const { return std::get_if<CombRef>(&v_); }
  const Comb* as_comb() const {
    const auto* r = as_comb_ref();
    return r ? r->get() : nullptr;
  }
  const App<Term>* as_app() const {
    const auto* c = as_comb();
    return c ? std::get_if<App<Term>>(c) : nullptr;
  }
  const Lam<Term>* as_lam() const {
    const auto* c = as_comb();
    return c ? std::get_if<Lam<Term>>(c) : nullptr;
  }
  const Pi<Term>* as_pi() const {
    const auto* c = as_comb();
    return c ? std::get_if<Pi<Term>>(c) : nullptr;
  }

  /// Physical equality. Atoms compare by payload, Comb payloads by address.
  bool same(const Term& o) const {
    if (tag() != o.tag()) return false;
    switch (tag()) {
      case Tag::Kind:
      case Tag::Type:
        return true;
      case Tag::Const:
        return *as_const() == *o.as_const();
      case Tag::Var:
        return *as_var() == *o.as_var();
      case Tag::Comb:
        if constexpr (P::identity) {
          return as_comb_ref()->same(*o.as_comb_ref());
        } else {
          return as_comb() == o.as_comb();
        }
    }
    return false;
  }

  friend bool operator==(const Term& a, const Term& b) { return a.equals(b); }

 private:
  using Repr = std::variant<KindS, TypeS, ConstS, VarS, CombRef>;
  explicit Term(KindS s) : v_(s) {}
  explicit Term(TypeS s) : v_(s) {}
  explicit Term(ConstS s) : v_(std::move(s)) {}
  explicit Term(VarS s) : v_(s) {}
  explicit Term(CombRef r) : v_(std::move(r)) {}

  bool equals(const Term& o) const {
    if (tag() != o.tag()) return false;
    if (tag() != Tag::Comb) return same(o);
    if (same(o)) return true;
    const Comb& x = *as_comb();
    const Comb& y = *o.as_comb();
    if (x.index() != y.index()) return false;
    if (const auto* a = std::get_if<App<Term>>(&x)) {
      const auto& b = std::get<App<Term>>(y);
      if (a->args.size() != b.args.size() || !(a->head == b.head)) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!(a->args[i] == b.args[i])) return false;
      return true;
    }
    if (const auto* a = std::get_if<Lam<Term>>(&x)) {
      const auto& b = std::get<Lam<Term>>(y);
      if (a->ann.has_value() != b.ann.has_value()) return false;
      if (a->ann && !(*a->ann == *b.ann)) return false;
      return a->body == b.body;
    }
    const auto& a = std::get<Pi<Term>>(x);
    const auto& b = std::get<Pi<Term>>(y);
    return a.dom == b.dom && a.cod == b.cod;
  }

  Repr v_;
};

// Atomic terms hold no compound payload; this keeps their copies allocation-free.
static_assert(std::is_nothrow_move_constructible_v<Term<std::size_t, LocalShared>>);

/// Rebuilds `t` with possibly different constants and sharing policy.
/// `f` maps each constant; exceptions from `f` propagate unchanged.
template <class C2, class P2, class C, class P, class F>
Term<C2, P2> transform(const Term<C, P>& t, F&& f) {
  using T2 = Term<C2, P2>;
  switch (t.tag()) {
    case Tag::Kind:
      return T2::kind();
    case Tag::Type:
      return T2::type();
    case Tag::Const:
      return T2::constant(f(*t.as_const()));
    case Tag::Var:
      return T2::var(*t.as_var());
    case Tag::Comb:
      break;
  }
  const auto& c = *t.as_comb();
  if (const auto* a = std::get_if<App<Term<C, P>>>(&c)) {
    std::vector<T2> args;
    args.reserve(a->args.size());
    T2 head = transform<C2, P2>(a->head, f);
    for (const auto& x : a->args) args.push_back(transform<C2, P2>(x, f));
    return T2::comb(App<T2>{std::move(head), std::move(args)});
  }
  if (const auto* l = std::get_if<Lam<Term<C, P>>>(&c)) {
    std::optional<T2> ann;
    if (l->ann) ann = transform<C2, P2>(*l->ann, f);
    return T2::lam(l->name, std::move(ann), transform<C2, P2>(l->body, f));
  }
  const auto& p = std::get<Pi<Term<C, P>>>(c);
  T2 dom = transform<C2, P2>(p.dom, f);
  return T2::pi(p.name, std::move(dom), transform<C2, P2>(p.cod, f));
}

template <class P2, class C, class P>
Term<C, P2> convert_policy(const Term<C, P>& t) {
  return transform<C, P2>(t, [](const C& c) -> const C& { return c; });
}

template <class C2, class C, class P, class F>
Term<C2, P> map_constants(const Term<C, P>& t, F&& f) {
  return transform<C2, P>(t, std::forward<F>(f));
}

/// Rewrites variables; `f(index, depth)` returns a replacement or nullopt.
/// Returns nullopt when nothing changed, so untouched subterms keep their
/// identity under shared policies.
template <class C, class P, class F>
std::optional<Term<C, P>> map_vars(const Term<C, P>& t, std::size_t depth, F& f) {
  using T = Term<C, P>;
  if (auto i = t.as_var()) {
    auto r = f(*i, depth);
    if (r && r->same(t)) return std::nullopt;
    return r;
  }
  const auto* c = t.as_comb();
  if (!c) return std::nullopt;
  if (const auto* a = std::get_if<App<T>>(c)) {
    auto head = map_vars(a->head, depth, f);
    std::vector<std::optional<T>> args;
    bool changed = head.has_value();
    args.reserve(a->args.size());
    for (const auto& x : a->args) {
      args.push_back(map_vars(x, depth, f));
      changed = changed || args.back().has_value();
    }
    if (!changed) return std::nullopt;
    std::vector<T> out;
    out.reserve(args.size());
    for (std::size_t k = 0; k < args.size(); ++k)
      out.push_back(args[k] ? std::move(*args[k]) : a->args[k]);
    return T::app(head ? std::move(*head) : a->head, std::move(out));
  }
  if (const auto* l = std::get_if<Lam<T>>(c)) {
    std::optional<T> ann;
    if (l->ann) ann = map_vars(*l->ann, depth, f);
    auto body = map_vars(l->body, depth + 1, f);
    if (!ann && !body) return std::nullopt;
    std::optional<T> new_ann = l->ann;
    if (ann) new_ann = std::move(ann);
    return T::lam(l->name, std::move(new_ann), body ? std::move(*body) : l->body);
  }
  const auto& p = std::get<Pi<T>>(*c);
  auto dom = map_vars(p.dom, depth, f);
  auto cod = map_vars(p.cod, depth + 1, f);
  if (!dom && !cod) return std::nullopt;
  return T::pi(p.name, dom ? std::move(*dom) : p.dom, cod ? std::move(*cod) : p.cod);
}

/// Adds `amount` to every variable index >= `cutoff` (counting binders).
template <class C, class P>
Term<C, P> shift(const Term<C, P>& t, std::size_t amount, std::size_t cutoff = 0) {
  if (amount == 0) return t;
  auto f = [&](std::size_t i, std::size_t depth) -> std::optional<Term<C, P>> {
    if (i < depth + cutoff) return std::nullopt;
    return Term<C, P>::var(i + amount);
  };
  auto r = map_vars(t, 0, f);
  return r ? std::move(*r) : t;
}

/// Non-dependent product `dom -> cod`.
template <class C, class P>
Term<C, P> arrow(Term<C, P> dom, const Term<C, P>& cod) {
  return Term<C, P>::pi(Name{}, std::move(dom), shift(cod, 1));
}

/// True iff Var(index) occurs free in `t` (relative to the outside of `t`).
template <class C, class P>
bool occurs(const Term<C, P>& t, std::size_t index) {
  bool found = false;
  auto f = [&](std::size_t i, std::size_t depth) -> std::optional<Term<C, P>> {
    if (i == index + depth) found = true;
    return std::nullopt;
  };
  map_vars(t, 0, f);
  return found;
}

struct NodeCount {
  std::size_t constructors = 0;
  std::size_t indirections = 0;
};

/// Counts constructor nodes of both layers and the indirections between them.
template <class C, class P>
NodeCount count_nodes(const Term<C, P>& t) {
  using T = Term<C, P>;
  NodeCount n;
  n.constructors = 1;
  const auto* c = t.as_comb();
  if (!c) return n;
  n.indirections = 1;
  n.constructors += 1;
  auto add = [&](const T& x) {
    auto m = count_nodes(x);
    n.constructors += m.constructors;
    n.indirections += m.indirections;
  };
  if (const auto* a = std::get_if<App<T>>(c)) {
    add(a->head);
    for (const auto& x : a->args) add(x);
  } else if (const auto* l = std::get_if<Lam<T>>(c)) {
    if (l->ann) add(*l->ann);
    add(l->body);
  } else {
    const auto& p = std::get<Pi<T>>(*c);
    add(p.dom);
    add(p.cod);
  }
  return n;
}

}  // namespace lpc
