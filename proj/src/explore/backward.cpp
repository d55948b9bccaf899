#include "jitbp/backward.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace jitbp {

namespace {

// Removes one thread at l if there is one.
void retract(std::vector<std::uint32_t>& ls, std::uint32_t l) {
  auto it = std::lower_bound(ls.begin(), ls.end(), l);
  if (it != ls.end() && *it == l) ls.erase(it);
}

std::vector<std::uint32_t> without(const std::vector<std::uint32_t>& ls, std::uint32_t l) {
  std::vector<std::uint32_t> out = ls;
  retract(out, l);
  return out;
}

std::vector<std::uint32_t> with(std::vector<std::uint32_t> ls, std::uint32_t l) {
  ls.insert(std::upper_bound(ls.begin(), ls.end(), l), l);
  return ls;
}

void broadcast_preimages(const ThreadSystem& sys, const LocalMove& m,
                         const std::vector<std::uint32_t>& rest, std::vector<TtsConfig>& out) {
  const auto pairs = sys.receivers_all(MoveKind::BroadcastSend, m.g_pre, m.g_post);
  // Every remaining thread either stayed (its local is not eligible) or was
  // released from one of the receiver sources.
  std::set<std::vector<std::uint32_t>> partial{{}};
  for (std::uint32_t x : rest) {
    std::vector<std::uint32_t> options;
    if (!sys.eligible(MoveKind::BroadcastSend, m.g_pre, m.g_post, x)) options.push_back(x);
    for (const auto& [from, to] : pairs)
      if (to == x) options.push_back(from);
    std::set<std::vector<std::uint32_t>> next;
    for (const auto& p : partial)
      for (std::uint32_t o : options) next.insert(with(p, o));
    partial.swap(next);
    if (partial.empty()) return;
  }
  for (const auto& p : partial) out.emplace_back(m.g_pre, with(p, m.l_pre));
}

void signal_preimages(const ThreadSystem& sys, const LocalMove& m,
                      const std::vector<std::uint32_t>& rest, std::vector<TtsConfig>& out) {
  // No waiter was present.
  const bool any_waiter = std::any_of(rest.begin(), rest.end(), [&](std::uint32_t x) {
    return sys.eligible(MoveKind::SignalSend, m.g_pre, m.g_post, x);
  });
  if (!any_waiter) out.emplace_back(m.g_pre, with(rest, m.l_pre));
  // One waiter at x was released to rx.
  for (const auto& [x, rx] : sys.receivers_all(MoveKind::SignalSend, m.g_pre, m.g_post))
    out.emplace_back(m.g_pre, with(with(without(rest, rx), x), m.l_pre));
}

}  // namespace

std::vector<TtsConfig> minimize(std::vector<TtsConfig> cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::stable_sort(cs.begin(), cs.end(),
                   [](const TtsConfig& a, const TtsConfig& b) { return a.size() < b.size(); });
  std::vector<TtsConfig> kept;
  for (const TtsConfig& c : cs) {
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [&](const TtsConfig& k) { return covers(c, k); });
    if (!dominated) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<TtsConfig> cover_preimage(const ThreadSystem& sys, const TtsConfig& w) {
  std::vector<TtsConfig> out;
  const auto& ls = w.locals();
  for (const LocalMove& m : sys.moves_into(w.g())) {
    switch (m.kind) {
      case MoveKind::Plain:
        out.emplace_back(m.g_pre, with(without(ls, m.l_post), m.l_pre));
        break;
      case MoveKind::Create:
        out.emplace_back(m.g_pre, with(without(without(ls, m.l_post), m.spawn), m.l_pre));
        break;
      case MoveKind::Terminate:
        out.emplace_back(m.g_pre, with(ls, m.l_pre));
        break;
      case MoveKind::BroadcastSend:
        broadcast_preimages(sys, m, without(ls, m.l_post), out);
        break;
      case MoveKind::SignalSend:
        signal_preimages(sys, m, without(ls, m.l_post), out);
        break;
    }
  }
  return minimize(std::move(out));
}

InitialSet InitialSet::single(std::vector<TtsConfig> configs) {
  InitialSet s;
  s.mode_ = InitMode::Single;
  s.configs_ = std::move(configs);
  return s;
}

InitialSet InitialSet::param(std::vector<TtsState> thread_states) {
  InitialSet s;
  s.mode_ = InitMode::Param;
  std::sort(thread_states.begin(), thread_states.end());
  thread_states.erase(std::unique(thread_states.begin(), thread_states.end()), thread_states.end());
  s.threads_ = std::move(thread_states);
  return s;
}

bool InitialSet::meets(const TtsConfig& p) const {
  if (mode_ == InitMode::Single)
    return std::any_of(configs_.begin(), configs_.end(),
                       [&](const TtsConfig& c) { return covers(c, p); });
  auto lo = std::lower_bound(threads_.begin(), threads_.end(), TtsState{p.g(), 0});
  if (lo == threads_.end() || lo->g != p.g()) return false;
  return std::all_of(p.locals().begin(), p.locals().end(), [&](std::uint32_t l) {
    return std::binary_search(threads_.begin(), threads_.end(), TtsState{p.g(), l});
  });
}

BwsResult bws(const ThreadSystem& sys, const InitialSet& init, const std::vector<TtsConfig>& targets,
              const BwsOptions& opt) {
  BwsResult res;
  Verdict& v = res.verdict;
  BudgetMeter meter(opt.budget);

  std::vector<TtsConfig> u = minimize(targets);
  for (const TtsConfig& t : u)
    if (init.meets(t)) throw PreconditionError("target " + to_string(t) + " is already initial");
  std::set<TtsConfig> in_u(u.begin(), u.end());
  std::deque<TtsConfig> work(u.begin(), u.end());
  auto account = [&] {
    v.stats.stored = in_u.size();
    v.stats.frontier_peak = std::max(v.stats.frontier_peak, work.size());
  };
  account();

  while (!work.empty()) {
    meter.check(v.stats);
    TtsConfig w = std::move(work.front());
    work.pop_front();
    if (!in_u.count(w)) continue;  // superseded by a smaller element
    ++v.stats.expanded;
    for (TtsConfig& p : cover_preimage(sys, w)) {
      if (std::any_of(in_u.begin(), in_u.end(), [&](const TtsConfig& k) { return covers(p, k); }))
        continue;
      for (auto it = in_u.begin(); it != in_u.end();) {
        if (covers(*it, p)) {
          v.stats.mem_bytes -= std::min(v.stats.mem_bytes, footprint(*it));
          it = in_u.erase(it);
        } else {
          ++it;
        }
      }
      v.stats.mem_bytes += footprint(p);
      in_u.insert(p);
      if (init.meets(p)) {
        v.outcome = Outcome::Found;
        v.witness = p;
        account();
        res.minimal.assign(in_u.begin(), in_u.end());
        v.stats.seconds = meter.elapsed();
        return res;
      }
      work.push_back(std::move(p));
      account();
    }
  }
  res.minimal.assign(in_u.begin(), in_u.end());
  v.stats.seconds = meter.elapsed();
  return res;
}

}  // namespace jitbp
