#include "lpc/typing.hpp"

#include <vector>

#include "lpc/error.hpp"
#include "lpc/print.hpp"

namespace lpc {

namespace {

template <class P>
struct Scope {
  Scope(KLocalContext<P>& d, Name n, KTerm<P> ty) : delta(d) {
    delta.push_back({std::move(n), std::move(ty)});
  }
  ~Scope() { delta.pop_back(); }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;
  KLocalContext<P>& delta;
};

}  // namespace

template <class P>
std::string Typer<P>::render(const KLocalContext<P>& delta, const KTerm<P>& t) const {
  std::vector<std::string> names;
  names.reserve(delta.size());
  for (const auto& e : delta) names.push_back(e.name);
  return show(t, std::move(names));
}

template <class P>
KTerm<P> Typer<P>::infer_sort(KLocalContext<P>& delta, const KTerm<P>& t) {
  KTerm<P> s = red_.whnf(infer(delta, t));
  if (!s.is_sort()) {
    throw TypeError(TypeErrorKind::UnsortedBinder,
                    "'" + render(delta, t) + "' is not a type (it has type '" + render(delta, s) + "')",
                    render(delta, s), "a sort");
  }
  return s;
}

template <class P>
KTerm<P> Typer<P>::infer(KLocalContext<P>& delta, const KTerm<P>& t) {
  using T = KTerm<P>;
  switch (t.tag()) {
    case Tag::Kind:
      throw TypeError(TypeErrorKind::KindMisuse, "Kind has no type");
    case Tag::Type:
      return T::kind();
    case Tag::Const:
      return red_.context().lookup_type(*t.as_const());
    case Tag::Var: {
      const std::size_t i = *t.as_var();
      if (i >= delta.size()) throw TypeError(TypeErrorKind::Unbound, "unbound variable #" + std::to_string(i));
      return shift(delta[delta.size() - 1 - i].type, i + 1);
    }
    case Tag::Comb:
      break;
  }
  const auto& c = *t.as_comb();
  if (const auto* a = std::get_if<App<T>>(&c)) {
    T ty = infer(delta, a->head);
    for (const auto& arg : a->args) {
      const T fn = red_.whnf(ty);
      const auto* pi = fn.as_pi();
      if (!pi) {
        throw TypeError(TypeErrorKind::NotAFunction,
                        "'" + render(delta, a->head) + "' is applied to too many arguments; its type '" +
                            render(delta, fn) + "' is not a product",
                        render(delta, fn), "a product");
      }
      check(delta, arg, pi->dom);
      ty = subst0(pi->cod, arg);
    }
    return ty;
  }
  if (const auto* l = std::get_if<Lam<T>>(&c)) {
    if (!l->ann) {
      throw TypeError(TypeErrorKind::NotInferable,
                      "cannot infer the type of unannotated abstraction '" + render(delta, t) + "'");
    }
    const T s = infer_sort(delta, *l->ann);
    if (!s.is_type()) {
      throw TypeError(TypeErrorKind::UnsortedBinder,
                      "domain '" + render(delta, *l->ann) + "' of an abstraction must have type Type");
    }
    T body_ty;
    {
      Scope<P> scope(delta, l->name, *l->ann);
      body_ty = infer(delta, l->body);
      if (body_ty.is_kind()) throw TypeError(TypeErrorKind::KindMisuse, "abstraction body has type Kind");
    }
    return T::pi(l->name, *l->ann, std::move(body_ty));
  }
  const auto& p = std::get<Pi<T>>(c);
  const T ds = infer_sort(delta, p.dom);
  if (!ds.is_type()) {
    throw TypeError(TypeErrorKind::UnsortedBinder,
                    "domain '" + render(delta, p.dom) + "' of a product must have type Type");
  }
  Scope<P> scope(delta, p.name, p.dom);
  return infer_sort(delta, p.cod);
}

template <class P>
void Typer<P>::check(KLocalContext<P>& delta, const KTerm<P>& t, const KTerm<P>& expected) {
  using T = KTerm<P>;
  if (const auto* l = t.as_lam()) {
    const T a = red_.whnf(expected);
    if (const auto* pi = a.as_pi()) {
      if (l->ann) {
        const T s = infer_sort(delta, *l->ann);
        if (!s.is_type()) {
          throw TypeError(TypeErrorKind::UnsortedBinder,
                          "domain '" + render(delta, *l->ann) + "' of an abstraction must have type Type");
        }
        if (!red_.convertible(*l->ann, pi->dom)) {
          throw TypeError(TypeErrorKind::Mismatch,
                          "binder annotation '" + render(delta, *l->ann) + "' does not match expected domain '" +
                              render(delta, pi->dom) + "'",
                          render(delta, *l->ann), render(delta, pi->dom));
        }
      }
      Scope<P> scope(delta, l->name, l->ann ? *l->ann : pi->dom);
      check(delta, l->body, pi->cod);
      return;
    }
    if (!l->ann) {
      throw TypeError(TypeErrorKind::Mismatch,
                      "abstraction '" + render(delta, t) + "' checked against non-product type '" +
                          render(delta, a) + "'",
                      "a product", render(delta, a));
    }
  }
  const T actual = infer(delta, t);
  if (!red_.convertible(actual, expected)) {
    const std::string act = render(delta, red_.whnf(actual));
    const std::string exp = render(delta, red_.whnf(expected));
    throw TypeError(TypeErrorKind::Mismatch,
                    "type mismatch for '" + render(delta, t) + "': expected '" + exp + "', got '" + act + "'",
                    act, exp);
  }
}

template <class P>
GlobalContext<P> check_declaration(const GlobalContext<P>& g, Symbol c, const KTerm<P>& a,
                                   ReduceOptions opts) {
  if (g.contains(c)) throw ContextError(ContextError::Kind::Redeclaration, c.name());
  Typer<P> typer(g, opts);
  KLocalContext<P> delta;
  typer.infer_sort(delta, a);
  return g.declare(c, a);
}

template <class P>
std::pair<GlobalContext<P>, CheckTask<P>> check_rule(const GlobalContext<P>& g, KRule<P> r, Origin origin,
                                                     ReduceOptions opts) {
  if (auto v = validate_rule(r)) throw RuleError(std::move(*v));
  if (!g.contains(r.head())) throw ContextError(ContextError::Kind::UndeclaredHead, r.head().name());
  Typer<P> typer(g, opts);
  KLocalContext<P> delta;
  delta.reserve(r.ctx.size());
  for (const auto& e : r.ctx) {
    typer.infer_sort(delta, e.type);
    delta.push_back(e);
  }
  const auto lhs = pattern_to_term<KTerm<P>>(r.lhs, r.ctx.size());
  KTerm<P> lhs_type = typer.infer(delta, lhs);
  CheckTask<P> task{g, r.ctx, r.rhs, std::move(lhs_type), origin};
  return {g.add_rule(std::move(r)), std::move(task)};
}

template <class P>
std::optional<Failure> run_task(const CheckTask<P>& task, ReduceOptions opts, ReduceStats* stats) {
  try {
    Typer<P> typer(task.gamma, opts, stats);
    KLocalContext<P> delta = task.delta;
    typer.check(delta, task.subject, task.expected);
    return std::nullopt;
  } catch (const Error& e) {
    return Failure{task.origin, e.what()};
  }
}

template class Typer<LocalShared>;
template class Typer<GlobalShared>;

#define LPC_INSTANTIATE(P)                                                                             \
  template GlobalContext<P> check_declaration<P>(const GlobalContext<P>&, Symbol, const KTerm<P>&,   \
                                                 ReduceOptions);                                       \
  template std::pair<GlobalContext<P>, CheckTask<P>> check_rule<P>(const GlobalContext<P>&, KRule<P>, \
                                                                   Origin, ReduceOptions);             \
  template std::optional<Failure> run_task<P>(const CheckTask<P>&, ReduceOptions, ReduceStats*);

LPC_INSTANTIATE(LocalShared)
LPC_INSTANTIATE(GlobalShared)

#undef LPC_INSTANTIATE

}  // namespace lpc
