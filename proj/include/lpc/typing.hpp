#pragma once

// Bidirectional type inference and checking for the lambda-Pi calculus
// modulo rewriting, and the split of rule verification into an eager part
// (left-hand side) and a deferrable task (right-hand side).
//
// Implemented rules:
//   Type : Kind
//   c : A                 when (c : A) is in the global context
//   x : A                 when (x : A) is in the local context
//   t u : B[u/x]          when t : Πx:A.B and u ⇐ A
//   λx:A.t : Πx:A.B       when A : Type, t : B and B is not Kind
//   Πx:A.B : s            when A : Type and B : s for a sort s
//   t ⇐ A                 when t : B and B ~ A (or t is a lambda and A a product)

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "lpc/context.hpp"
#include "lpc/reduce.hpp"

namespace lpc {

/// Where a check comes from; `command` is 1-based within its file.
struct Origin {
  std::size_t file = 0;
  std::size_t command = 0;
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator<(const Origin& a, const Origin& b) {
    return a.file != b.file ? a.file < b.file : a.command < b.command;
  }
  friend bool operator==(const Origin& a, const Origin& b) {
    return a.file == b.file && a.command == b.command;
  }
};

struct Failure {
  Origin origin;
  std::string message;
};

template <class P>
struct CheckTask {
  GlobalContext<P> gamma;
  KLocalContext<P> delta;
  KTerm<P> subject;
  KTerm<P> expected;
  Origin origin;
};

template <class P>
class Typer {
 public:
  explicit Typer(const GlobalContext<P>& g, ReduceOptions opts = {}, ReduceStats* stats = nullptr)
      : red_(g, opts, stats) {}

  KTerm<P> infer(KLocalContext<P>& delta, const KTerm<P>& t);
  void check(KLocalContext<P>& delta, const KTerm<P>& t, const KTerm<P>& expected);

  /// Infers the type of `t` and requires it to reduce to a sort.
  KTerm<P> infer_sort(KLocalContext<P>& delta, const KTerm<P>& t);

  Reducer<P>& reducer() { return red_; }

 private:
  std::string render(const KLocalContext<P>& delta, const KTerm<P>& t) const;

  Reducer<P> red_;
};

extern template class Typer<LocalShared>;
extern template class Typer<GlobalShared>;

template <class P>
KTerm<P> infer(const GlobalContext<P>& g, KLocalContext<P> delta, const KTerm<P>& t,
               ReduceOptions opts = {}) {
  return Typer<P>(g, opts).infer(delta, t);
}

template <class P>
void check(const GlobalContext<P>& g, KLocalContext<P> delta, const KTerm<P>& t, const KTerm<P>& a,
           ReduceOptions opts = {}) {
  Typer<P>(g, opts).check(delta, t, a);
}

/// Verifies that `a` is typed by a sort, then declares `c : a`.
template <class P>
GlobalContext<P> check_declaration(const GlobalContext<P>& g, Symbol c, const KTerm<P>& a,
                                   ReduceOptions opts = {});

/// Validates the rule, checks its context and infers the type A of its
/// left-hand side. Returns the context extended by the rule and the task
/// `gamma, delta |- rhs : A` over the context as it was before the rule.
template <class P>
std::pair<GlobalContext<P>, CheckTask<P>> check_rule(const GlobalContext<P>& g, KRule<P> r,
                                                     Origin origin = {}, ReduceOptions opts = {});

/// Runs a deferred check. Pure: the same task always gives the same result.
template <class P>
std::optional<Failure> run_task(const CheckTask<P>& task, ReduceOptions opts = {},
                                ReduceStats* stats = nullptr);

}  // namespace lpc
