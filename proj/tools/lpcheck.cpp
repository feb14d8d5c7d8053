// lpcheck: verify theory files, or generate test corpora.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lpc/corpus.hpp"
#include "lpc/pipeline.hpp"

namespace {

int run_check(const lpc::Config& cfg, const std::vector<std::string>& files) {
  std::vector<lpc::Source> sources;
  try {
    for (const auto& f : files) sources.push_back(lpc::read_source(f));
  } catch (const lpc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const lpc::Verdict v = lpc::check_theories(cfg, sources);
  if (cfg.stats) std::cout << v.stats_lines();
  if (!v.ok()) {
    std::cerr << v.failure()->render() << "\n";
    return 1;
  }
  return 0;
}

int run_gen(const lpc::corpus::Spec& spec, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path = fs::path(dir) / lpc::corpus::file_name(spec);
  std::string text;
  try {
    text = lpc::corpus::generate(spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write '" << path.string() << "'\n";
    return 2;
  }
  std::cout << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-Pi modulo rewriting proof checker"};
  app.require_subcommand(1);

  lpc::Config cfg;
  std::vector<std::string> files;
  std::size_t step_limit = 0;
  std::uint64_t seed = 0;
  auto* check = app.add_subcommand("check", "verify theory files in order");
  check->add_option("files", files, "theory files")->required();
  check->add_option("--jobs", cfg.jobs, "check workers (0 = check on the main thread)");
  check->add_flag("--parse-thread", cfg.parse_thread, "parse on a dedicated thread");
  check->add_flag("--parse-only", cfg.parse_only, "stop after parsing");
  check->add_flag("--no-check", cfg.no_check, "skip deferred right-hand-side checks");
  check->add_flag("--eta", cfg.eta, "convertibility modulo eta");
  auto* limit_opt = check->add_option("--step-limit", step_limit, "abort reductions after N steps");
  check->add_flag("--stats", cfg.stats, "print per-stage wall times");
  auto* seed_opt = check->add_option("--seed", seed, "randomize check task start order");

  lpc::corpus::Spec spec;
  std::string family = "peano-heavy", dir = ".";
  std::size_t plant_at = 0;
  auto* gen = app.add_subcommand("gen", "write a generated theory");
  gen->add_option("--family", family, "peano-heavy | wide | planted")
      ->check(CLI::IsMember({"peano-heavy", "wide", "planted"}));
  gen->add_option("--n", spec.n, "commands after the base signature");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("-o,--out", dir, "output directory");
  gen->add_option("--fib", spec.fib, "largest fib argument (peano-heavy)");
  auto* plant_opt = gen->add_option("--plant-at", plant_at, "index of the planted error (planted)");
  gen->add_flag("--second-error", spec.second_error, "plant a second, later error (planted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*check) {
    if (*limit_opt) cfg.step_limit = step_limit;
    if (*seed_opt) cfg.seed = seed;
    return run_check(cfg, files);
  }
  spec.family = *lpc::corpus::parse_family(family);
  if (*plant_opt) spec.plant_at = plant_at;
  return run_gen(spec, dir);
}
