#include <doctest.h>

#include "lpc/corpus.hpp"
#include "lpc/pipeline.hpp"
#include "support/modes.hpp"
#include "support/theory.hpp"

using namespace lpc;

namespace {

std::vector<Source> one(std::string text, std::string name = "t.dk") {
  return {Source{std::move(name), std::move(text)}};
}

std::string replace_line(std::string_view text, std::size_t line, const std::string& with) {
  std::string out;
  std::size_t n = 1, start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view l = text.substr(start, end - start);
    out += n == line ? with : std::string(l);
    out += '\n';
    ++n;
    start = end + 1;
  }
  return out;
}

// Rule right-hand sides fail at commands 3 and 7.
const std::string two_failures =
    "nat : Type.\n"
    "0 : nat.\n"
    "def a : nat := Type.\n"
    "succ : nat -> nat.\n"
    "def one : nat := succ 0.\n"
    "def two : nat := succ one.\n"
    "def b : nat -> nat := 0.\n"
    "c : nat.\n";

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("implication theory in every mode") {
    for (const auto& m : test::all_modes()) {
      const Verdict v = check_theories(m.cfg, one(std::string(test::example1)));
      CHECK_MESSAGE(v.ok(), m.name << ": " << v.summary());
      CHECK(v.commands == 6);
      CHECK(v.symbols == 4);
      CHECK(v.rules == 2);
      CHECK(v.tasks == 2);
      CHECK(v.summary() == "ok");
    }
  }

  TEST_CASE("empty input") {
    const Verdict v = run_sequential(Config{}, one(""));
    CHECK(v.ok());
    CHECK(v.symbols == 0);
    CHECK(v.commands == 0);
    CHECK(check_theories(Config{}, {}).ok());
  }

  TEST_CASE("swapped rhs fails at command 6 in every mode") {
    const std::string bad = replace_line(test::example1, 6, "[] imprefl --> x => p => x.");
    for (const auto& m : test::all_modes()) {
      const Verdict v = check_theories(m.cfg, one(bad));
      REQUIRE(v.failure());
      CHECK(v.failure()->command == 6);
      CHECK(v.failure()->line == 6);
      CHECK(v.failure()->column == 1);
      CHECK(v.summary().rfind("t.dk:6:1: command #6: ", 0) == 0);
    }
  }

  TEST_CASE("smallest failing command is reported") {
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      for (const auto& m : test::all_modes(seed)) {
        const Verdict v = check_theories(m.cfg, one(two_failures));
        REQUIRE(v.failure());
        CHECK_MESSAGE(v.failure()->command == 3, m.name);
      }
    Config cfg;
    cfg.jobs = 4;
    const Verdict v = run_parallel_check(cfg, one(two_failures));
    CHECK(v.failures.size() <= 2);
    CHECK(std::is_sorted(v.failures.begin(), v.failures.end(),
                         [](const Diagnostic& a, const Diagnostic& b) { return a.command < b.command; }));
  }

  TEST_CASE("errors before a syntax error win") {
    const std::string text = two_failures.substr(0, two_failures.find("succ :")) + "oops : (.\n";
    for (const auto& m : test::all_modes()) {
      const Verdict v = check_theories(m.cfg, one(text));
      REQUIRE(v.failure());
      CHECK_MESSAGE(v.failure()->command == 3, m.name);
    }
    for (const auto& m : test::all_modes()) {
      const Verdict v = check_theories(m.cfg, one("nat : Type.\noops : (.\ndef a : nat := Type.\n"));
      REQUIRE(v.failure());
      CHECK(v.failure()->command == 2);
    }
  }

  TEST_CASE("context extensions follow command order") {
    const std::string text = corpus::generate({corpus::Family::PeanoHeavy, 30, 5, 10});
    Config base;
    base.trace = true;
    const Verdict ref = run_sequential(base, one(text));
    REQUIRE(ref.ok());
    CHECK(ref.trace.front() == "declare nat");
    CHECK(ref.trace[4] == "rule add");
    for (const auto& m : test::all_modes(3)) {
      Config c = m.cfg;
      c.trace = true;
      const Verdict v = check_theories(c, one(text));
      CHECK(v.ok());
      CHECK_MESSAGE(v.trace == ref.trace, m.name);
    }
  }

  TEST_CASE("running tasks never exceed the worker count") {
    const std::string text = corpus::generate({corpus::Family::PeanoHeavy, 40, 8, 9});
    for (unsigned n : {1u, 2u, 3u, 4u}) {
      Config c;
      c.jobs = n;
      c.seed = n;
      const Verdict v = check_theories(c, one(text));
      CHECK(v.ok());
      CHECK(v.tasks_peak >= 1);
      CHECK(v.tasks_peak <= n);
      CHECK(v.tasks == 47);  // 7 base rules and 40 theorems
    }
  }

  TEST_CASE("generated corpora") {
    using namespace corpus;
    const Verdict big = run_sequential(Config{}, one(generate({Family::PeanoHeavy, 200, 7, 16})));
    CHECK(big.ok());
    CHECK(big.commands == 215);

    const std::string base = generate({Family::PeanoHeavy, 0, 7});
    CHECK(base == peano_base());
    const Verdict v0 = run_sequential(Config{}, one(base));
    CHECK(v0.ok());
    CHECK(v0.commands == 15);

    CHECK(run_sequential(Config{}, one(generate({Family::Wide, 500, 1}))).ok());

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const std::string planted = generate({Family::Planted, 40, seed, 16, 42});
      for (const auto& m : test::all_modes(seed)) {
        const Verdict v = check_theories(m.cfg, one(planted));
        REQUIRE(v.failure());
        CHECK_MESSAGE(v.failure()->command == 42, m.name << " seed " << seed);
      }
    }
    CHECK(generate({Family::Wide, 50, 9}) == generate({Family::Wide, 50, 9}));
    CHECK(generate({Family::Wide, 50, 9}) != generate({Family::Wide, 50, 10}));
    CHECK_THROWS_AS(generate({Family::Planted, 5, 0, 16, 3}), std::invalid_argument);
  }

  TEST_CASE("files share one growing context") {
    const std::vector<Source> files{{"a.dk", "nat : Type.\n0 : nat.\n"}, {"b.dk", "succ : nat -> nat.\nx : natt.\n"}};
    for (const auto& m : test::all_modes()) {
      const Verdict v = check_theories(m.cfg, files);
      REQUIRE(v.failure());
      CHECK(v.failure()->file == "b.dk");
      CHECK(v.failure()->file_index == 1);
      CHECK(v.failure()->command == 2);
      CHECK(v.summary() == "b.dk:2:1: command #2: unknown constant 'natt'");
    }
  }

  TEST_CASE("stage switches") {
    const std::string bad = replace_line(test::example1, 6, "[] imprefl --> x => p => x.");
    Config c;
    c.no_check = true;
    CHECK(run_sequential(c, one(bad)).ok());
    c.jobs = 2;
    CHECK(check_theories(c, one(bad)).ok());

    Config p;
    p.parse_only = true;
    const Verdict v = run_sequential(p, one("a : b.\nc : d.\n"));
    CHECK(v.ok());
    CHECK(v.commands == 2);
    CHECK_FALSE(run_sequential(p, one("a : b\n")).ok());
  }

  TEST_CASE("step limit is reported as a failure") {
    Config c;
    c.step_limit = 500;
    const std::string loop =
        "nat : Type.\n0 : nat.\nloop : nat.\n[] loop --> loop.\nP : nat -> Type.\np : P 0.\n";
    CHECK(run_sequential(Config{}, one("nat : Type.\nloop : nat.\n[] loop --> loop.\n")).ok());
    for (const auto& m : test::all_modes()) {
      Config mc = m.cfg;
      mc.step_limit = 500;
      const Verdict v = check_theories(mc, one(loop + "def q : P loop := p.\n"));
      REQUIRE(v.failure());
      CHECK(v.failure()->command == 7);
      CHECK(v.failure()->message.find("step limit") != std::string::npos);
    }
  }

  TEST_CASE("stats lines") {
    Config c;
    c.stats = true;
    const Verdict v = run_sequential(c, one(std::string(test::example1)));
    const std::string s = v.stats_lines();
    for (const char* stage : {"stage=parse wall_ms=", "stage=share wall_ms=", "stage=infer wall_ms=",
                              "stage=check wall_ms=", "tasks_peak="})
      CHECK(s.find(stage) != std::string::npos);
  }
}
