#include "lpc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "lpc/channel.hpp"
#include "lpc/context.hpp"
#include "lpc/parse.hpp"
#include "lpc/share.hpp"
#include "lpc/typing.hpp"

namespace lpc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool before(const Origin& a, std::size_t file, std::size_t command) {
  return a.file != file ? a.file < file : a.command < command;
}

/// Fixed set of workers running deferred checks; at most `n` tasks run at
/// once and at most `n` more wait in the queue.
template <class P>
class CheckPool {
 public:
  CheckPool(unsigned n, ReduceOptions opts, std::optional<std::uint64_t> seed)
      : capacity_(n), opts_(opts), seed_(seed) {
    for (unsigned i = 0; i < n; ++i) threads_.emplace_back([this] { work(); });
  }
  ~CheckPool() { finish(); }

  void submit(CheckTask<P> task) {
    std::unique_lock lock(m_);
    not_full_.wait(lock, [&] { return queue_.size() < capacity_; });
    queue_.push_back(std::move(task));
    ++submitted_;
    not_empty_.notify_one();
  }

  void finish() {
    {
      std::lock_guard lock(m_);
      if (closing_) return;
      closing_ = true;
      not_empty_.notify_all();
    }
    for (auto& t : threads_) t.join();
  }

  std::optional<Origin> earliest_failure() {
    std::lock_guard lock(m_);
    return earliest_;
  }

  std::vector<Failure> failures() {
    std::lock_guard lock(m_);
    return failures_;
  }
  std::size_t peak() const { return peak_; }
  std::size_t submitted() const { return submitted_; }
  double busy_ms() const { return busy_ms_; }

 private:
  void work() {
    for (;;) {
      CheckTask<P> task;
      {
        std::unique_lock lock(m_);
        not_empty_.wait(lock, [&] { return closing_ || !queue_.empty(); });
        if (queue_.empty()) return;
        task = std::move(queue_.front());
        queue_.pop_front();
        not_full_.notify_one();
      }
      if (seed_) {
        std::mt19937_64 rng(*seed_ ^ (task.origin.file << 32) ^ task.origin.command);
        std::this_thread::sleep_for(std::chrono::microseconds(rng() % 500));
      }
      {
        std::lock_guard lock(m_);
        if (running_++ == 0) busy_start_ = Clock::now();
        peak_ = std::max(peak_, running_);
      }
      auto result = run_task(task, opts_);
      std::lock_guard lock(m_);
      if (result) {
        if (!earliest_ || result->origin < *earliest_) earliest_ = result->origin;
        failures_.push_back(std::move(*result));
      }
      if (--running_ == 0) busy_ms_ += ms_since(busy_start_);
    }
  }

  std::size_t capacity_;
  ReduceOptions opts_;
  std::optional<std::uint64_t> seed_;

  std::mutex m_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<CheckTask<P>> queue_;
  bool closing_ = false;
  std::size_t running_ = 0;
  std::size_t peak_ = 0;
  std::size_t submitted_ = 0;
  Clock::time_point busy_start_;
  double busy_ms_ = 0;
  std::optional<Origin> earliest_;
  std::vector<Failure> failures_;
  std::vector<std::thread> threads_;
};

template <class P>
class Driver {
 public:
  Driver(const Config& cfg, const std::vector<Source>& sources, unsigned workers)
      : cfg_(cfg), sources_(sources), opts_{cfg.eta, cfg.step_limit} {
    if (workers > 0 && !cfg.parse_only && !cfg.no_check)
      pool_.emplace(workers, opts_, cfg.seed);
  }

  /// False once checking must stop.
  bool should_continue(std::size_t file, std::size_t index) {
    if (!pool_) return true;
    auto e = pool_->earliest_failure();
    return !e || !before(*e, file, index);
  }

  template <class C>
  bool process(std::size_t file, const Command<C>& cmd) {
    const Origin origin{file, cmd.index, cmd.pos.line, cmd.pos.column};
    if (cfg_.parse_only) {
      ++verdict_.commands;
      return true;
    }
    std::vector<CheckTask<P>> tasks;
    try {
      auto t0 = Clock::now();
      KCommand<P> k = share_command<P>(symbols_, cmd, file);
      verdict_.times.share_ms += ms_since(t0);

      t0 = Clock::now();
      if (auto* d = std::get_if<KDeclaration<P>>(&k.item)) {
        g_ = check_declaration(g_, d->name, d->type, opts_);
        note("declare " + d->name.name());
      } else if (auto* d = std::get_if<KDefinition<P>>(&k.item)) {
        g_ = check_declaration(g_, d->name, d->type, opts_);
        note("declare " + d->name.name());
        auto [g, task] = check_rule(g_, std::move(d->rule), origin, opts_);
        g_ = std::move(g);
        note("rule " + d->name.name());
        tasks.push_back(std::move(task));
      } else {
        auto& r = std::get<KRuleCommand<P>>(k.item);
        const std::string head = r.rule.head().name();
        auto [g, task] = check_rule(g_, std::move(r.rule), origin, opts_);
        g_ = std::move(g);
        note("rule " + head);
        tasks.push_back(std::move(task));
      }
      verdict_.times.infer_ms += ms_since(t0);
    } catch (const Error& e) {
      fail(origin, e.what());
      return false;
    }
    if (cfg_.no_check) {
      ++verdict_.commands;
      return true;
    }
    for (auto& task : tasks) {
      if (pool_) {
        pool_->submit(std::move(task));
        continue;
      }
      const auto t0 = Clock::now();
      auto result = run_task(task, opts_);
      const double ms = ms_since(t0);
      verdict_.times.check_ms += ms;
      verdict_.task_ms.push_back(ms);
      ++verdict_.tasks;
      verdict_.tasks_peak = 1;
      if (result) {
        fail(result->origin, result->message);
        return false;
      }
    }
    ++verdict_.commands;
    return true;
  }

  void parse_failure(std::size_t file, const ParseError& e) {
    Diagnostic d;
    d.file = sources_[file].name;
    d.file_index = file;
    d.line = e.line;
    d.column = e.column;
    d.command = e.command;
    d.message = e.what();
    verdict_.failures.push_back(std::move(d));
  }

  void add_parse_time(double ms) { verdict_.times.parse_ms += ms; }

  Verdict finish() {
    if (pool_) {
      pool_->finish();
      for (auto& f : pool_->failures()) fail(f.origin, f.message);
      verdict_.times.check_ms = pool_->busy_ms();
      verdict_.tasks_peak = pool_->peak();
      verdict_.tasks = pool_->submitted();
    }
    std::stable_sort(verdict_.failures.begin(), verdict_.failures.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                       return a.file_index != b.file_index ? a.file_index < b.file_index
                                                           : a.command < b.command;
                     });
    verdict_.symbols = g_.symbol_count();
    verdict_.rules = g_.rule_count();
    return std::move(verdict_);
  }

 private:
  void note(std::string event) {
    if (cfg_.trace) verdict_.trace.push_back(std::move(event));
  }

  void fail(const Origin& o, std::string message) {
    Diagnostic d;
    d.file = sources_[o.file].name;
    d.file_index = o.file;
    d.line = o.line;
    d.column = o.column;
    d.command = o.command;
    d.message = std::move(message);
    verdict_.failures.push_back(std::move(d));
  }

  const Config& cfg_;
  const std::vector<Source>& sources_;
  ReduceOptions opts_;
  SymbolTable symbols_;
  GlobalContext<P> g_;
  Verdict verdict_;
  // Declared last so that workers are joined before the context and symbols go away.
  std::optional<CheckPool<P>> pool_;
};

template <class P>
Verdict run_inline_parse(const Config& cfg, const std::vector<Source>& sources, unsigned workers) {
  Driver<P> driver(cfg, sources, workers);
  for (std::size_t f = 0; f < sources.size(); ++f) {
    Parser parser(sources[f].text);
    bool go = true;
    while (go) {
      auto t0 = Clock::now();
      std::optional<Command<Borrowed>> cmd;
      try {
        cmd = parser.next();
      } catch (const ParseError& e) {
        driver.add_parse_time(ms_since(t0));
        driver.parse_failure(f, e);
        return driver.finish();
      }
      driver.add_parse_time(ms_since(t0));
      if (!cmd) break;
      if (!driver.should_continue(f, cmd->index)) return driver.finish();
      go = driver.process(f, *cmd);
    }
    if (!go) return driver.finish();
  }
  return driver.finish();
}

struct Handoff {
  std::size_t file = 0;
  std::optional<Command<Owned>> command;
  std::optional<ParseError> error;
};

template <class P>
Verdict run_threaded_parse(const Config& cfg, const std::vector<Source>& sources, unsigned workers) {
  Driver<P> driver(cfg, sources, workers);
  Channel<Handoff> channel(64);
  double parse_ms = 0;
  std::thread producer([&] {
    const auto t0 = Clock::now();
    for (std::size_t f = 0; f < sources.size(); ++f) {
      Parser parser(sources[f].text);
      try {
        while (auto cmd = parser.next()) {
          if (!channel.push(Handoff{f, own_command(*cmd), std::nullopt})) {
            parse_ms = ms_since(t0);
            return;
          }
        }
      } catch (const ParseError& e) {
        channel.push(Handoff{f, std::nullopt, e});
        break;
      }
    }
    parse_ms = ms_since(t0);
    channel.close();
  });
  while (auto item = channel.pop()) {
    if (item->error) {
      driver.parse_failure(item->file, *item->error);
      break;
    }
    if (!driver.should_continue(item->file, item->command->index)) break;
    if (!driver.process(item->file, *item->command)) break;
  }
  channel.close();
  producer.join();
  driver.add_parse_time(parse_ms);
  return driver.finish();
}

}  // namespace

Source read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return Source{path, ss.str()};
}

std::string Diagnostic::render() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": command #" +
         std::to_string(command) + ": " + message;
}

std::string Verdict::summary() const { return ok() ? "ok" : failure()->render(); }

std::string Verdict::stats_lines() const {
  auto line = [](const char* name, double ms) {
    return std::string("stage=") + name + " wall_ms=" + std::to_string(static_cast<long long>(ms)) + "\n";
  };
  return line("parse", times.parse_ms) + line("share", times.share_ms) + line("infer", times.infer_ms) +
         line("check", times.check_ms) + "tasks_peak=" + std::to_string(tasks_peak) + "\n";
}

Verdict run_sequential(const Config& cfg, const std::vector<Source>& sources) {
  return run_inline_parse<LocalShared>(cfg, sources, 0);
}

Verdict run_parallel_check(const Config& cfg, const std::vector<Source>& sources) {
  return run_inline_parse<GlobalShared>(cfg, sources, std::max(1u, cfg.jobs));
}

Verdict run_parallel_parse(const Config& cfg, const std::vector<Source>& sources) {
  if (cfg.jobs == 0) return run_threaded_parse<LocalShared>(cfg, sources, 0);
  return run_threaded_parse<GlobalShared>(cfg, sources, cfg.jobs);
}

Verdict check_theories(const Config& cfg, const std::vector<Source>& sources) {
  if (cfg.parse_thread) return run_parallel_parse(cfg, sources);
  if (cfg.jobs > 0) return run_parallel_check(cfg, sources);
  return run_sequential(cfg, sources);
}

}  // namespace lpc
