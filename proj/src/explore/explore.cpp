#include "jitbp/explore.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace jitbp {

const char* to_string(Outcome o) { return o == Outcome::Found ? "found" : "not-found"; }

namespace {

const char* limit_name(BudgetExceeded::Limit l) {
  switch (l) {
    case BudgetExceeded::Limit::States: return "state budget exceeded";
    case BudgetExceeded::Limit::Time: return "time budget exceeded";
    case BudgetExceeded::Limit::Memory: return "memory budget exceeded";
  }
  return "budget exceeded";
}

}  // namespace

BudgetExceeded::BudgetExceeded(Limit limit, Stats stats)
    : Error(limit_name(limit)), limit_(limit), stats_(stats) {}

BudgetMeter::BudgetMeter(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

double BudgetMeter::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void BudgetMeter::check(Stats& s) {
  if (s.stored > budget_.max_states) {
    s.seconds = elapsed();
    throw BudgetExceeded(BudgetExceeded::Limit::States, s);
  }
  if (s.mem_bytes > budget_.max_memory) {
    s.seconds = elapsed();
    throw BudgetExceeded(BudgetExceeded::Limit::Memory, s);
  }
  if ((++tick_ & 63U) == 0) {
    s.seconds = elapsed();
    if (s.seconds > budget_.timeout_s) throw BudgetExceeded(BudgetExceeded::Limit::Time, s);
  }
}

std::size_t footprint(const TtsConfig& c) {
  // Node of a hash set plus the config and its local vector.
  return sizeof(TtsConfig) + 4 * sizeof(void*) + c.size() * sizeof(std::uint32_t);
}

bool covers(const TtsConfig& a, const TtsConfig& b) {
  if (a.g() != b.g() || a.size() < b.size()) return false;
  return std::includes(a.locals().begin(), a.locals().end(), b.locals().begin(),
                       b.locals().end());
}

Target::Target(std::vector<TtsConfig> configs) : configs_(std::move(configs)) {
  std::sort(configs_.begin(), configs_.end());
  configs_.erase(std::unique(configs_.begin(), configs_.end()), configs_.end());
}

bool Target::hit(const TtsConfig& c) const {
  return std::any_of(configs_.begin(), configs_.end(),
                     [&](const TtsConfig& t) { return covers(c, t); });
}

ExploreResult explore(const Stepper& step, const std::vector<TtsConfig>& initial,
                      const Target& target, const ExploreOptions& opt) {
  ExploreResult res;
  Verdict& v = res.verdict;
  BudgetMeter meter(opt.budget);
  std::unordered_set<TtsConfig, TtsConfigHash> seen;
  std::deque<TtsConfig> work;

  // Returns true when the search may stop.
  auto merge = [&](const TtsConfig& c) {
    if (opt.max_threads && c.size() > *opt.max_threads) return false;
    if (!seen.insert(c).second) return false;
    v.stats.stored = seen.size();
    v.stats.mem_bytes += footprint(c) * 2;  // visited set and worklist
    work.push_back(c);
    v.stats.frontier_peak = std::max(v.stats.frontier_peak, work.size());
    if (target.hit(c)) {
      if (!v.witness) v.witness = c;
      v.outcome = Outcome::Found;
      return !opt.exhaustive;
    }
    return false;
  };

  bool done = false;
  for (const TtsConfig& c : initial) {
    if (merge(c)) {
      done = true;
      break;
    }
  }
  std::vector<TtsConfig> next;
  while (!done && !work.empty()) {
    meter.check(v.stats);
    TtsConfig w = std::move(work.front());
    work.pop_front();
    v.stats.mem_bytes -= std::min(v.stats.mem_bytes, footprint(w));
    ++v.stats.expanded;
    next.clear();
    step.step(w, next);
    for (const TtsConfig& c : next) {
      if (merge(c)) {
        done = true;
        break;
      }
    }
  }
  v.stats.seconds = meter.elapsed();
  if (opt.record_visited) {
    res.visited.assign(seen.begin(), seen.end());
    std::sort(res.visited.begin(), res.visited.end());
  }
  return res;
}

}  // namespace jitbp
