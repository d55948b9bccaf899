#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jitbp/errors.hpp"
#include "jitbp/stepper.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

/// Resource limits of one exploration.
struct Budget {
  std::size_t max_states = 1'000'000;
  double timeout_s = 30.0;
  std::size_t max_memory = std::size_t{1} << 30;
};

struct Stats {
  std::size_t expanded = 0;
  std::size_t stored = 0;
  std::size_t frontier_peak = 0;
  std::size_t mem_bytes = 0;
  double seconds = 0.0;
};

enum class Outcome : std::uint8_t { Found, NotFound };

const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::NotFound;
  Stats stats;
  std::optional<TtsConfig> witness;  // first configuration meeting the target
};

/// Raised when a budget runs out; carries the statistics gathered so far.
class BudgetExceeded : public Error {
 public:
  enum class Limit : std::uint8_t { States, Time, Memory };
  BudgetExceeded(Limit limit, Stats stats);
  Limit limit() const noexcept { return limit_; }
  const Stats& stats() const noexcept { return stats_; }

 private:
  Limit limit_;
  Stats stats_;
};

/// Tracks time, stored states and an estimate of container memory.
class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& b);
  /// Throws BudgetExceeded if any limit is exceeded. Time is sampled every
  /// few calls.
  void check(Stats& s);
  double elapsed() const;

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint32_t tick_ = 0;
};

/// Approximate heap footprint of a stored configuration.
std::size_t footprint(const TtsConfig& c);

/// Coverability target: a configuration is a hit if it covers one of the
/// listed configurations (same shared state, at least as many threads in
/// every local state).
class Target {
 public:
  Target() = default;
  explicit Target(std::vector<TtsConfig> configs);

  bool hit(const TtsConfig& c) const;
  const std::vector<TtsConfig>& configs() const noexcept { return configs_; }
  bool empty() const noexcept { return configs_.empty(); }

 private:
  std::vector<TtsConfig> configs_;
};

/// a covers b: same shared state and a has at least b's multiset of locals.
bool covers(const TtsConfig& a, const TtsConfig& b);

struct ExploreOptions {
  Budget budget;
  /// Successors with more threads are discarded (bounded exploration).
  std::optional<std::size_t> max_threads;
  /// Return the visited set in the result.
  bool record_visited = false;
  /// Explore everything even after a hit.
  bool exhaustive = false;
};

struct ExploreResult {
  Verdict verdict;
  std::vector<TtsConfig> visited;  // sorted; only with record_visited
};

/// Breadth-first worklist search from `initial`. Targets are checked when a
/// configuration is first merged into the visited set, initial ones
/// included.
ExploreResult explore(const Stepper& step, const std::vector<TtsConfig>& initial,
                      const Target& target, const ExploreOptions& opt = {});

}  // namespace jitbp
