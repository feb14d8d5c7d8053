#pragma once

// Weak-head normalisation by an abstract machine.
//
// A machine state (ctx, term, stack) denotes (term ctx) s1 ... sn. The
// context holds lazy terms for the de Bruijn indices bound so far, and
// the stack holds shared mutable argument slots: when matching evaluates
// a slot, every alias of the slot sees the evaluated state.
//
// Machines, slots and lazy terms use single-thread reference counting
// whatever the term policy is; a reducer never leaves the thread that
// created it.

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "lpc/context.hpp"
#include "lpc/ptr.hpp"
#include "lpc/term.hpp"

namespace lpc {

struct ReduceOptions {
  bool eta = false;
  // Maximum number of beta/gamma steps per reducer; unlimited when empty.
  std::optional<std::size_t> step_limit;
};

/// Instrumentation counters, filled only when a reducer is given one.
struct ReduceStats {
  std::size_t beta = 0;
  std::size_t gamma = 0;
  std::size_t forces = 0;
  std::unordered_map<Symbol, std::size_t> gamma_by_head;

  std::size_t rule_applications(Symbol head) const {
    auto it = gamma_by_head.find(head);
    return it == gamma_by_head.end() ? 0 : it->second;
  }
};

template <class P>
struct StateCell;
template <class P>
struct Thunk;

template <class P>
using StatePtr = Rc<StateCell<P>>;
template <class P>
using LazyTerm = Rc<Thunk<P>>;

/// Persistent list of lazy terms; index 0 is the innermost binding.
template <class P>
class Env {
  struct Node {
    LazyTerm<P> value;
    Rc<Node> next;
  };

 public:
  Env() = default;
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  Env push(LazyTerm<P> v) const {
    Env e;
    e.head_ = Rc<Node>::make(Node{std::move(v), head_});
    e.size_ = size_ + 1;
    return e;
  }

  const LazyTerm<P>& at(std::size_t i) const {
    const Node* n = head_.get();
    while (i-- > 0) n = n->next.get();
    return n->value;
  }

 private:
  Rc<Node> head_;
  std::size_t size_ = 0;
};

template <class P>
struct State {
  Env<P> ctx;
  KTerm<P> term;
  // Arguments; back() is the first (innermost) argument.
  std::vector<StatePtr<P>> stack;

  static State of(KTerm<P> t) { return State{Env<P>{}, std::move(t), {}}; }
};

template <class P>
struct StateCell {
  State<P> state;
  bool normal = false;
};

template <class P>
struct Thunk {
  std::variant<StatePtr<P>, KTerm<P>> value;
  bool forced() const { return value.index() == 1; }
};

template <class P>
StatePtr<P> make_slot(State<P> s) {
  return StatePtr<P>::make(StateCell<P>{std::move(s), false});
}
template <class P>
LazyTerm<P> make_lazy(StatePtr<P> slot) {
  return LazyTerm<P>::make(Thunk<P>{std::move(slot)});
}
template <class P>
LazyTerm<P> make_lazy(KTerm<P> t) {
  return LazyTerm<P>::make(Thunk<P>{std::move(t)});
}

/// Matched pattern variables, indexed by context level.
template <class P>
using Substitution = std::vector<LazyTerm<P>>;

template <class P>
class Reducer {
 public:
  explicit Reducer(const GlobalContext<P>& g, ReduceOptions opts = {}, ReduceStats* stats = nullptr)
      : g_(g), opts_(opts), stats_(stats) {}

  const GlobalContext<P>& context() const { return g_; }
  const ReduceOptions& options() const { return opts_; }

  /// Reduces `s` in place until no beta step or rule applies at the head.
  void whnf(State<P>& s);
  KTerm<P> whnf(const KTerm<P>& t);

  /// Weak-head normal term denoted by the lazy term, computed at most once.
  const KTerm<P>& force(const LazyTerm<P>& lt);

  /// Tries `r` against the arguments on the stack of `s`, whose focus must be
  /// the head constant of `r`. Slots are evaluated only when a pattern
  /// argument is headed by a constant.
  std::optional<Substitution<P>> match_rule(const KRule<P>& r, State<P>& s);

  /// Term denoted by a state: applies the context and re-applies the stack.
  /// Suspended thunks are read back as they stand, without evaluation.
  KTerm<P> readback(const State<P>& s);
  KTerm<P> readback(const LazyTerm<P>& lt);

  bool convertible(const KTerm<P>& a, const KTerm<P>& b);

  std::size_t steps() const { return steps_; }

 private:
  void evaluate(const StatePtr<P>& slot);
  bool match(const Pattern<Symbol>& p, const StatePtr<P>& slot, Substitution<P>& sub);
  KTerm<P> subst_env(const KTerm<P>& t, const Env<P>& env);
  void step();

  GlobalContext<P> g_;
  ReduceOptions opts_;
  ReduceStats* stats_;
  std::size_t steps_ = 0;
};

extern template class Reducer<LocalShared>;
extern template class Reducer<GlobalShared>;

template <class P>
State<P> whnf(const GlobalContext<P>& g, State<P> s, ReduceOptions opts = {}) {
  Reducer<P> r(g, opts);
  r.whnf(s);
  return s;
}

template <class P>
bool convertible(const GlobalContext<P>& g, const KTerm<P>& a, const KTerm<P>& b, bool eta = false) {
  Reducer<P> r(g, ReduceOptions{eta, std::nullopt});
  return r.convertible(a, b);
}

/// Replaces Var(depth + j) by values[j] (j < n, shifted under binders) and
/// lowers the indices above the window by n. Untouched subterms keep their
/// identity.
template <class C, class P>
Term<C, P> substitute(const Term<C, P>& t, std::span<const Term<C, P>> values, std::size_t depth = 0) {
  const std::size_t n = values.size();
  if (n == 0) return t;
  auto f = [&](std::size_t i, std::size_t d) -> std::optional<Term<C, P>> {
    const std::size_t lo = d + depth;
    if (i < lo) return std::nullopt;
    const std::size_t j = i - lo;
    if (j < n) return shift(values[j], lo);
    return Term<C, P>::var(i - n);
  };
  auto r = map_vars(t, 0, f);
  return r ? std::move(*r) : t;
}

/// Instantiates the outermost bound variable of a binder body.
template <class C, class P>
Term<C, P> subst0(const Term<C, P>& body, const Term<C, P>& value) {
  return substitute(body, std::span<const Term<C, P>>(&value, 1));
}

}  // namespace lpc
