#include "jitbp/ecut.hpp"

#include <algorithm>
#include <map>

namespace jitbp {

void require_fixed_threads(const BoolProgram& p) {
  if (p.has_kind(StmtKind::StartThread) || p.has_kind(StmtKind::EndThread))
    throw PreconditionError("cutoff detection needs a program without start_thread/end_thread");
}

void require_fixed_threads(const Tts& t) {
  for (const TtsEdge& e : t.edges())
    if (e.kind == EdgeKind::Creation)
      throw PreconditionError("cutoff detection needs a system without creation edges");
}

std::vector<TtsConfig> instance_configs(const std::vector<TtsState>& initial_threads,
                                        std::size_t n) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_g;
  for (const TtsState& s : initial_threads) by_g[s.g].push_back(s.l);
  std::vector<TtsConfig> out;
  for (auto& [g, ls] : by_g) {
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    // Non-decreasing index sequences of length n enumerate the multisets.
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
      std::vector<std::uint32_t> locals(n);
      for (std::size_t i = 0; i < n; ++i) locals[i] = ls[pick[i]];
      out.emplace_back(g, std::move(locals));
      std::size_t i = n;
      while (i > 0 && pick[i - 1] == ls.size() - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < n; ++j) pick[j] = pick[i - 1];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EcutReport ecut(const Stepper& post, const std::vector<TtsState>& initial_threads,
                const EcutOptions& opt) {
  if (post.direction() != Direction::Post)
    throw PreconditionError("cutoff detection needs a forward stepper");
  EcutReport report;
  BudgetMeter overall(opt.budget);
  for (std::size_t n = std::max<std::size_t>(opt.n_start, 1); n <= opt.n_max + 1; ++n) {
    ExploreOptions eo;
    eo.budget = opt.budget;
    eo.budget.timeout_s = std::max(0.0, opt.budget.timeout_s - overall.elapsed());
    eo.record_visited = true;
    eo.exhaustive = true;
    ExploreResult r;
    try {
      r = explore(post, instance_configs(initial_threads, n), Target{}, eo);
    } catch (const BudgetExceeded& e) {
      Stats s = report.stats;
      s.expanded += e.stats().expanded;
      s.seconds = overall.elapsed();
      throw BudgetExceeded(e.limit(), s);
    }
    EcutRound round;
    round.n = n;
    round.configs = r.visited.size();
    for (const TtsConfig& c : r.visited)
      for (std::uint32_t l : c.locals()) round.thread_states.push_back({c.g(), l});
    std::sort(round.thread_states.begin(), round.thread_states.end());
    round.thread_states.erase(std::unique(round.thread_states.begin(), round.thread_states.end()),
                              round.thread_states.end());
    report.stats.expanded += r.verdict.stats.expanded;
    report.stats.stored += r.verdict.stats.stored;
    report.stats.frontier_peak = std::max(report.stats.frontier_peak, r.verdict.stats.frontier_peak);
    report.stats.mem_bytes = std::max(report.stats.mem_bytes, r.verdict.stats.mem_bytes);
    if (!report.rounds.empty()) {
      const auto& prev = report.rounds.back().thread_states;
      if (!std::includes(round.thread_states.begin(), round.thread_states.end(), prev.begin(),
                         prev.end()))
        report.monotone = false;
      if (prev == round.thread_states && !report.candidate_cutoff)
        report.candidate_cutoff = report.rounds.back().n;
    }
    report.rounds.push_back(std::move(round));
    if (report.candidate_cutoff) break;
  }
  report.stats.seconds = overall.elapsed();
  return report;
}

}  // namespace jitbp
