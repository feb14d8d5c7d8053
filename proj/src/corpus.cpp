#include "lpc/corpus.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace lpc::corpus {

namespace {

std::string num(unsigned k) {
  if (k == 0) return "0";
  std::string s;
  for (unsigned i = 1; i < k; ++i) s += "succ (";
  s += "succ 0";
  s.append(k - 1, ')');
  return s;
}

std::string paren(const std::string& s) { return s.find(' ') == std::string::npos ? s : "(" + s + ")"; }

std::string fib(unsigned k) { return "fib " + paren(num(k)); }

unsigned fib_value(unsigned k) {
  unsigned a = 0, b = 1;
  for (unsigned i = 0; i < k; ++i) {
    const unsigned c = a + b;
    a = b;
    b = c;
  }
  return a;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  unsigned range(unsigned lo, unsigned hi) { return lo + static_cast<unsigned>(pick(hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

std::string heavy_theorem(Gen& g, std::size_t i, unsigned top) {
  const std::string name = "thm_" + std::to_string(i);
  const unsigned lo = top >= 4 ? top - 2 : 2;
  const unsigned k = g.range(lo, std::max(lo, top));
  if (g.pick(3) != 0) {
    // Addends swapped relative to the fib rule, so the check has to normalize both sides.
    return "def " + name + " : eq (" + fib(k) + ") (add (" + fib(k - 2) + ") (" + fib(k - 1) +
           ")) := refl (" + fib(k) + ").\n";
  }
  const unsigned j = g.range(lo - 1, k - 1);
  const std::string a = "(" + fib(k) + ")", b = "(" + fib(j) + ")";
  return "def " + name + " : eq (add " + a + " " + b + ") (add " + b + " " + a + ") := refl (add " + a +
         " " + b + ").\n";
}

std::string light_theorem(Gen& g, std::size_t i) {
  const unsigned a = g.range(0, 4), b = g.range(0, 4);
  const std::string name = "lem_" + std::to_string(i);
  if (g.pick(2) == 0)
    return "def " + name + " : eq (add " + paren(num(a)) + " " + paren(num(b)) + ") " + paren(num(a + b)) +
           " := refl " + paren(num(a + b)) + ".\n";
  const unsigned k = g.range(2, 7);
  return "def " + name + " : eq (" + fib(k) + ") " + paren(num(fib_value(k))) + " := refl (" + fib(k) + ").\n";
}

std::string bad_command(Gen& g, std::size_t i) {
  const std::string name = "bad_" + std::to_string(i);
  switch (g.pick(5)) {
    case 0:
      return "def " + name + " : nat := refl 0.\n";
    case 1:
      return "def " + name + " : eq (add " + paren(num(2)) + " " + paren(num(2)) + ") " + paren(num(5)) +
             " := refl " + paren(num(4)) + ".\n";
    case 2:
      return name + " : Type -> nat.\n";
    case 3:
      return "[n : nat] add n n --> n.\n";
    default:
      return name + " : natural.\n";
  }
}

std::string wide_body(Gen& g, std::size_t n) {
  std::string out;
  if (n == 0) return out;
  out += "U : Type.\n";
  std::vector<std::string> consts, unary, binary, preds;
  for (std::size_t i = 2; i <= n; ++i) {
    const std::string id = std::to_string(i);
    const std::size_t choice = g.pick(6);
    if (consts.empty() || choice == 0) {
      out += "c_" + id + " : U.\n";
      consts.push_back("c_" + id);
    } else if (choice == 1) {
      out += "f_" + id + " : U -> U.\n";
      unary.push_back("f_" + id);
    } else if (choice == 2) {
      out += "g_" + id + " : U -> U -> U.\n";
      binary.push_back("g_" + id);
    } else if (choice == 3) {
      out += "p_" + id + " : U -> Type.\n";
      preds.push_back("p_" + id);
    } else if (choice == 4 && !binary.empty()) {
      const auto& f = binary[g.pick(binary.size())];
      out += "def d_" + id + " : U := " + f + " " + consts[g.pick(consts.size())] + " " +
             consts[g.pick(consts.size())] + ".\n";
      consts.push_back("d_" + id);
    } else if (!unary.empty()) {
      out += "def d_" + id + " : U := " + unary[g.pick(unary.size())] + " " + consts[g.pick(consts.size())] + ".\n";
      consts.push_back("d_" + id);
    } else if (!preds.empty()) {
      out += "h_" + id + " : x : U -> " + preds[g.pick(preds.size())] + " x.\n";
    } else {
      out += "c_" + id + " : U.\n";
      consts.push_back("c_" + id);
    }
  }
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::PeanoHeavy:
      return "peano-heavy";
    case Family::Wide:
      return "wide";
    case Family::Planted:
      return "planted";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  for (Family f : {Family::PeanoHeavy, Family::Wide, Family::Planted})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

std::string peano_base() {
  return "nat : Type.\n"
         "0 : nat.\n"
         "succ : nat -> nat.\n"
         "add : nat -> nat -> nat.\n"
         "[n : nat] add 0 n --> n.\n"
         "[m : nat, n : nat] add (succ m) n --> succ (add m n).\n"
         "mul : nat -> nat -> nat.\n"
         "[n : nat] mul 0 n --> 0.\n"
         "[m : nat, n : nat] mul (succ m) n --> add n (mul m n).\n"
         "fib : nat -> nat.\n"
         "[] fib 0 --> 0.\n"
         "[] fib (succ 0) --> succ 0.\n"
         "[n : nat] fib (succ (succ n)) --> add (fib (succ n)) (fib n).\n"
         "eq : nat -> nat -> Type.\n"
         "refl : n : nat -> eq n n.\n";
}

std::optional<std::size_t> planted_index(const Spec& spec) {
  if (spec.family != Family::Planted) return std::nullopt;
  if (spec.plant_at) {
    if (*spec.plant_at <= base_commands || *spec.plant_at > base_commands + spec.n + 1)
      throw std::invalid_argument("plant index must lie in (" + std::to_string(base_commands) + ", " +
                                  std::to_string(base_commands + spec.n + 1) + "]");
    return spec.plant_at;
  }
  Gen g(spec.seed ^ 0x9e3779b97f4a7c15ull);
  return base_commands + 1 + g.pick(spec.n + 1);
}

std::string generate(const Spec& spec) {
  Gen g(spec.seed);
  std::string out = peano_base();
  switch (spec.family) {
    case Family::PeanoHeavy:
      for (std::size_t i = 1; i <= spec.n; ++i) out += heavy_theorem(g, i, std::max(2u, spec.fib));
      break;
    case Family::Wide:
      out += wide_body(g, spec.n);
      break;
    case Family::Planted: {
      const std::size_t at = *planted_index(spec);
      std::optional<std::size_t> second;
      if (spec.second_error) second = at + 1 + g.pick(base_commands + spec.n + 2 - at);
      std::size_t index = base_commands;
      std::size_t good = 0;
      while (good < spec.n || index < at || (second && index < *second)) {
        ++index;
        if (index == at || (second && index == *second)) {
          out += bad_command(g, index);
        } else {
          out += light_theorem(g, index);
          ++good;
        }
      }
      break;
    }
  }
  return out;
}

std::string file_name(const Spec& spec) {
  return std::string(family_name(spec.family)) + "_" + std::to_string(spec.n) + "_" + std::to_string(spec.seed) +
         ".dk";
}

}  // namespace lpc::corpus
