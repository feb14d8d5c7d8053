#include "lpc/reduce.hpp"

#include "lpc/error.hpp"

namespace lpc {

template <class P>
void Reducer<P>::step() {
  ++steps_;
  if (opts_.step_limit && steps_ > *opts_.step_limit) throw StepLimitExceeded(*opts_.step_limit);
}

template <class P>
void Reducer<P>::whnf(State<P>& s) {
  using T = KTerm<P>;
  for (;;) {
    switch (s.term.tag()) {
      case Tag::Kind:
      case Tag::Type:
        return;
      case Tag::Var: {
        const std::size_t i = *s.term.as_var();
        if (i < s.ctx.size()) {
          const LazyTerm<P> lt = s.ctx.at(i);
          if (const auto* t = std::get_if<T>(&lt->value)) {
            s.ctx = Env<P>{};
            s.term = *t;
            continue;
          }
          // Continue from the evaluated slot itself so that its arguments stay shared.
          const StatePtr<P> slot = std::get<StatePtr<P>>(lt->value);
          evaluate(slot);
          const State<P>& inner = slot->state;
          s.ctx = inner.ctx;
          s.term = inner.term;
          s.stack.insert(s.stack.end(), inner.stack.begin(), inner.stack.end());
          continue;
        }
        s.term = T::var(i - s.ctx.size());
        s.ctx = Env<P>{};
        return;
      }
      case Tag::Const: {
        const Symbol c = *s.term.as_const();
        bool fired = false;
        for (const auto& r : g_.lookup_rules(c)) {
          const std::size_t n = r.arity();
          if (n > s.stack.size()) continue;
          auto sub = match_rule(r, s);
          if (!sub) continue;
          step();
          if (stats_) {
            ++stats_->gamma;
            ++stats_->gamma_by_head[c];
          }
          s.stack.resize(s.stack.size() - n);
          Env<P> env;
          for (auto& v : *sub) env = env.push(std::move(v));
          s.ctx = std::move(env);
          s.term = r.rhs;
          fired = true;
          break;
        }
        if (!fired) return;
        continue;
      }
      case Tag::Comb:
        break;
    }
    // Hold the payload while the focus is overwritten.
    const typename T::CombRef ref = *s.term.as_comb_ref();
    const auto& comb = *ref;
    if (const auto* a = std::get_if<App<T>>(&comb)) {
      for (auto it = a->args.rbegin(); it != a->args.rend(); ++it)
        s.stack.push_back(make_slot(State<P>{s.ctx, *it, {}}));
      s.term = a->head;
    } else if (const auto* l = std::get_if<Lam<T>>(&comb)) {
      if (s.stack.empty()) return;
      step();
      if (stats_) ++stats_->beta;
      StatePtr<P> arg = std::move(s.stack.back());
      s.stack.pop_back();
      s.ctx = s.ctx.push(make_lazy(std::move(arg)));
      s.term = l->body;
    } else {
      return;
    }
  }
}

template <class P>
KTerm<P> Reducer<P>::whnf(const KTerm<P>& t) {
  switch (t.tag()) {
    case Tag::Kind:
    case Tag::Type:
    case Tag::Var:
      return t;
    case Tag::Const:
      if (g_.lookup_rules(*t.as_const()).empty()) return t;
      break;
    case Tag::Comb:
      if (t.as_pi()) return t;
      break;
  }
  State<P> s = State<P>::of(t);
  whnf(s);
  return readback(s);
}

template <class P>
void Reducer<P>::evaluate(const StatePtr<P>& slot) {
  auto& cell = slot.mut();
  if (cell.normal) return;
  State<P> s = std::move(cell.state);
  whnf(s);
  cell.state = std::move(s);
  cell.normal = true;
}

template <class P>
const KTerm<P>& Reducer<P>::force(const LazyTerm<P>& lt) {
  auto& th = lt.mut();
  if (!th.forced()) {
    if (stats_) ++stats_->forces;
    StatePtr<P> slot = std::get<StatePtr<P>>(th.value);
    evaluate(slot);
    th.value = readback(slot->state);
  }
  return std::get<KTerm<P>>(th.value);
}

template <class P>
bool Reducer<P>::match(const Pattern<Symbol>& p, const StatePtr<P>& slot, Substitution<P>& sub) {
  if (const auto* v = p.as_mvar()) {
    sub[v->level] = make_lazy(slot);
    return true;
  }
  const auto& h = *p.as_head();
  evaluate(slot);
  const State<P>& st = slot->state;
  const Symbol* c = st.term.as_const();
  if (!c || *c != h.symbol || st.stack.size() != h.args.size()) return false;
  const std::size_t top = st.stack.size();
  for (std::size_t k = 0; k < h.args.size(); ++k) {
    // Copy the slot handle: nested evaluation may not touch `st`, but keep it alive anyway.
    const StatePtr<P> arg = st.stack[top - 1 - k];
    if (!match(h.args[k], arg, sub)) return false;
  }
  return true;
}

template <class P>
std::optional<Substitution<P>> Reducer<P>::match_rule(const KRule<P>& r, State<P>& s) {
  const auto& h = *r.lhs.as_head();
  const std::size_t n = h.args.size();
  if (n > s.stack.size()) return std::nullopt;
  Substitution<P> sub(r.ctx.size());
  const std::size_t top = s.stack.size();
  for (std::size_t k = 0; k < n; ++k) {
    const StatePtr<P> arg = s.stack[top - 1 - k];
    if (!match(h.args[k], arg, sub)) return std::nullopt;
  }
  return sub;
}

template <class P>
KTerm<P> Reducer<P>::subst_env(const KTerm<P>& t, const Env<P>& env) {
  if (env.empty()) return t;
  const std::size_t n = env.size();
  auto f = [&](std::size_t i, std::size_t d) -> std::optional<KTerm<P>> {
    if (i < d) return std::nullopt;
    const std::size_t j = i - d;
    if (j < n) return shift(readback(env.at(j)), d);
    return KTerm<P>::var(i - n);
  };
  auto r = map_vars(t, 0, f);
  return r ? std::move(*r) : t;
}

template <class P>
KTerm<P> Reducer<P>::readback(const State<P>& s) {
  KTerm<P> head = subst_env(s.term, s.ctx);
  if (s.stack.empty()) return head;
  std::vector<KTerm<P>> args;
  args.reserve(s.stack.size());
  for (auto it = s.stack.rbegin(); it != s.stack.rend(); ++it) args.push_back(readback((*it)->state));
  return KTerm<P>::app(std::move(head), std::move(args));
}

template <class P>
KTerm<P> Reducer<P>::readback(const LazyTerm<P>& lt) {
  const auto& v = lt->value;
  if (const auto* t = std::get_if<KTerm<P>>(&v)) return *t;
  return readback(std::get<StatePtr<P>>(v)->state);
}

template <class P>
bool Reducer<P>::convertible(const KTerm<P>& a, const KTerm<P>& b) {
  using T = KTerm<P>;
  std::vector<std::pair<T, T>> todo;
  todo.emplace_back(a, b);
  while (!todo.empty()) {
    auto [x0, y0] = std::move(todo.back());
    todo.pop_back();
    if (x0 == y0) continue;
    const T x = whnf(x0);
    const T y = whnf(y0);
    if (x.is_atomic() && y.is_atomic()) {
      if (!x.same(y)) return false;
      continue;
    }
    const auto* xl = x.as_lam();
    const auto* yl = y.as_lam();
    if (xl && yl) {
      todo.emplace_back(xl->body, yl->body);
      continue;
    }
    if (opts_.eta && (xl || yl)) {
      const T& other = xl ? y : x;
      const T expanded = T::app(shift(other, 1), {T::var(0)});
      if (xl) {
        todo.emplace_back(xl->body, expanded);
      } else {
        todo.emplace_back(expanded, yl->body);
      }
      continue;
    }
    if (const auto* xa = x.as_app()) {
      const auto* ya = y.as_app();
      if (!ya || xa->args.size() != ya->args.size()) return false;
      todo.emplace_back(xa->head, ya->head);
      for (std::size_t k = 0; k < xa->args.size(); ++k) todo.emplace_back(xa->args[k], ya->args[k]);
      continue;
    }
    const auto* xp = x.as_pi();
    const auto* yp = y.as_pi();
    if (xp && yp) {
      todo.emplace_back(xp->dom, yp->dom);
      todo.emplace_back(xp->cod, yp->cod);
      continue;
    }
    return false;
  }
  return true;
}

template class Reducer<LocalShared>;
template class Reducer<GlobalShared>;

}  // namespace lpc
