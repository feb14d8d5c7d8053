#pragma once

// Surface-syntax rendering of terms, used for diagnostics. The output
// reparses to a structurally equal term as long as binder names do not
// shadow each other.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lpc/symbol.hpp"
#include "lpc/term.hpp"

namespace lpc {

inline std::string_view constant_text(std::string_view s) { return s; }
inline std::string_view constant_text(const std::string& s) { return s; }
inline std::string_view constant_text(Symbol s) { return s.name(); }

namespace detail {

template <class C, class P>
class Printer {
  using T = Term<C, P>;

 public:
  explicit Printer(std::vector<std::string> names) : names_(std::move(names)) {}

  // level 0: anything; 1: application operand of an arrow; 2: atom.
  void print(const T& t, int level) {
    switch (t.tag()) {
      case Tag::Kind:
        out_ += "Kind";
        return;
      case Tag::Type:
        out_ += "Type";
        return;
      case Tag::Const:
        out_ += constant_text(*t.as_const());
        return;
      case Tag::Var: {
        const std::size_t i = *t.as_var();
        if (i < names_.size()) {
          out_ += names_[names_.size() - 1 - i];
        } else {
          out_ += "#" + std::to_string(i - names_.size());
        }
        return;
      }
      case Tag::Comb:
        break;
    }
    const auto& c = *t.as_comb();
    if (const auto* a = std::get_if<App<T>>(&c)) {
      open(level >= 2);
      print(a->head, 2);
      for (const auto& x : a->args) {
        out_ += ' ';
        print(x, 2);
      }
      close(level >= 2);
    } else if (const auto* l = std::get_if<Lam<T>>(&c)) {
      open(level >= 1);
      const std::string n = binder(l->name);
      out_ += n;
      if (l->ann) {
        out_ += " : ";
        print(*l->ann, 1);
      }
      out_ += " => ";
      names_.push_back(n);
      print(l->body, 0);
      names_.pop_back();
      close(level >= 1);
    } else {
      const auto& p = std::get<Pi<T>>(c);
      open(level >= 1);
      const std::string n = binder(p.name);
      if (occurs(p.cod, 0)) {
        out_ += n + " : ";
      }
      print(p.dom, 1);
      out_ += " -> ";
      names_.push_back(n);
      print(p.cod, 0);
      names_.pop_back();
      close(level >= 1);
    }
  }

  std::string take() { return std::move(out_); }

 private:
  // Primes a name that would capture an enclosing binder.
  std::string binder(const Name& n) const {
    std::string b = n.empty() ? "v" + std::to_string(names_.size()) : n;
    while (std::find(names_.begin(), names_.end(), b) != names_.end()) b += '\'';
    return b;
  }
  void open(bool b) {
    if (b) out_ += '(';
  }
  void close(bool b) {
    if (b) out_ += ')';
  }

  std::vector<std::string> names_;
  std::string out_;
};

}  // namespace detail

/// `names` are the free variables, innermost last.
template <class C, class P>
std::string show(const Term<C, P>& t, std::vector<std::string> names = {}) {
  detail::Printer<C, P> p(std::move(names));
  p.print(t, 0);
  return p.take();
}

}  // namespace lpc
