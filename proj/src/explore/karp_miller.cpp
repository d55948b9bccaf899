#include "jitbp/karp_miller.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace jitbp {

std::string to_string(OmegaNat v) { return v.is_omega() ? "w" : std::to_string(v.value()); }

// ---- counter vectors ----

CounterVector::CounterVector(std::uint32_t dim, std::vector<Entry> entries) : dim_(dim) {
  for (const auto& [l, v] : entries) add(l, v);
}

CounterVector CounterVector::from_config(const TtsConfig& c, std::uint32_t dim) {
  CounterVector v(dim);
  for (std::uint32_t l : c.locals()) v.add(l);
  return v;
}

OmegaNat CounterVector::get(std::uint32_t l) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                             [](const Entry& e, std::uint32_t x) { return e.first < x; });
  return (it != entries_.end() && it->first == l) ? it->second : OmegaNat(0);
}

void CounterVector::set(std::uint32_t l, OmegaNat v) {
  if (l >= dim_) throw PreconditionError("counter index out of range");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                             [](const Entry& e, std::uint32_t x) { return e.first < x; });
  const bool present = it != entries_.end() && it->first == l;
  if (v == OmegaNat(0)) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    entries_.insert(it, {l, v});
  }
}

void CounterVector::add(std::uint32_t l, OmegaNat k) { set(l, get(l) + k); }

void CounterVector::take(std::uint32_t l) {
  const OmegaNat v = get(l);
  if (v == OmegaNat(0)) throw PreconditionError("no thread to take");
  set(l, v.minus(1));
}

bool CounterVector::finite() const {
  return std::none_of(entries_.begin(), entries_.end(),
                      [](const Entry& e) { return e.second.is_omega(); });
}

std::vector<std::uint32_t> CounterVector::locals() const {
  if (!finite()) throw PreconditionError("omega counter has no multiset view");
  std::vector<std::uint32_t> out;
  for (const auto& [l, v] : entries_) out.insert(out.end(), v.value(), l);
  return out;
}

bool dominates(const CounterVector& a, const CounterVector& b) {
  if (a.dim() != b.dim()) throw PreconditionError("counter vectors of different length");
  auto ia = a.entries().begin();
  for (const auto& [l, v] : b.entries()) {
    while (ia != a.entries().end() && ia->first < l) ++ia;
    if (ia == a.entries().end() || ia->first != l || ia->second < v) return false;
  }
  return true;
}

bool covers(const KmNode& a, const KmNode& b) { return a.g == b.g && dominates(a.counts, b.counts); }

// ---- transfers ----

std::uint32_t Transfer::operator()(std::uint32_t l) const {
  auto it = std::lower_bound(map.begin(), map.end(), std::make_pair(l, 0U));
  return (it != map.end() && it->first == l) ? it->second : l;
}

Transfer Transfer::after(const Transfer& first) const {
  Transfer out;
  out.affine = affine && first.affine;
  std::vector<std::uint32_t> domain;
  for (const auto& e : first.map) domain.push_back(e.first);
  for (const auto& e : map) domain.push_back(e.first);
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  for (std::uint32_t x : domain) {
    const std::uint32_t y = (*this)(first(x));
    if (y != x) out.map.emplace_back(x, y);
  }
  return out;
}

// ---- acceleration ----

CounterVector accelerate(const std::vector<KmNode>& tree, const KmNode& node) {
  CounterVector c = node.counts;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto a = node.parent; a; a = tree[*a].parent) {
      const KmNode& anc = tree[*a];
      if (anc.g != node.g || anc.counts == c || !dominates(c, anc.counts)) continue;
      for (const auto& [l, v] : c.entries())
        if (!v.is_omega() && anc.counts.get(l) < v) {
          c.set(l, OmegaNat::omega());
          changed = true;
        }
    }
  }
  return c;
}

CounterVector accelerate_transfer(const std::vector<KmNode>& tree, const KmNode& node) {
  CounterVector c = node.counts;
  for (bool changed = true; changed;) {
    changed = false;
    Transfer path = node.effect;  // from the current ancestor down to `node`
    for (auto a = node.parent; a && path.affine; a = tree[*a].parent) {
      const KmNode& anc = tree[*a];
      if (anc.g == node.g && !(anc.counts == c) && dominates(c, anc.counts)) {
        std::vector<std::uint32_t> grown;
        for (const auto& [l, v] : c.entries())
          if (anc.counts.get(l) < v) grown.push_back(l);
        for (std::uint32_t l : grown) {
          // Follow the orbit of l until it repeats; the repeating part is
          // the cycle that keeps receiving the surplus.
          std::vector<std::uint32_t> orbit{l};
          std::uint32_t x = path(l);
          while (std::find(orbit.begin(), orbit.end(), x) == orbit.end()) {
            orbit.push_back(x);
            x = path(x);
          }
          for (auto it = std::find(orbit.begin(), orbit.end(), x); it != orbit.end(); ++it) {
            if (!c.get(*it).is_omega()) {
              c.set(*it, OmegaNat::omega());
              changed = true;
            }
          }
        }
      }
      path = path.after(anc.effect);
    }
  }
  return c;
}

// ---- successors ----

namespace {

// All ways to distribute n threads over `bins` targets.
void compositions(std::uint64_t n, std::size_t bins, std::vector<std::uint64_t>& cur,
                  std::vector<std::vector<std::uint64_t>>& out) {
  if (cur.size() + 1 == bins) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::uint64_t k = 0; k <= n; ++k) {
    cur.push_back(k);
    compositions(n - k, bins, cur, out);
    cur.pop_back();
  }
}

void broadcast_successors(const ThreadSystem& sys, const LocalMove& m, CounterVector base,
                          std::vector<CounterStep>& out) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> recv;
  for (const auto& [from, to] : sys.receivers_all(MoveKind::BroadcastSend, m.g_pre, m.g_post))
    recv[from].push_back(to);
  Transfer t;
  for (const auto& [from, tos] : recv) {
    if (tos.size() != 1) t.affine = false;
    if (tos.front() != from) t.map.emplace_back(from, tos.front());
  }
  if (!t.affine) t.map.clear();

  // Threads to release, removed from the base first.
  std::vector<std::pair<OmegaNat, const std::vector<std::uint32_t>*>> moving;
  for (const auto& [from, tos] : recv) {
    const OmegaNat n = base.get(from);
    if (n == OmegaNat(0)) continue;
    moving.emplace_back(n, &tos);
    base.set(from, 0);
  }
  std::vector<CounterVector> variants{base};
  for (const auto& [n, tos] : moving) {
    std::vector<CounterVector> next;
    if (n.is_omega() || tos->size() == 1) {
      for (CounterVector v : variants) {
        for (std::uint32_t to : *tos) v.add(to, n);
        next.push_back(std::move(v));
      }
    } else {
      std::vector<std::vector<std::uint64_t>> splits;
      std::vector<std::uint64_t> cur;
      compositions(n.value(), tos->size(), cur, splits);
      for (const CounterVector& v : variants)
        for (const auto& split : splits) {
          CounterVector w = v;
          for (std::size_t i = 0; i < split.size(); ++i)
            if (split[i]) w.add((*tos)[i], split[i]);
          next.push_back(std::move(w));
        }
    }
    variants.swap(next);
  }
  for (CounterVector& v : variants) {
    v.add(m.l_post);
    out.push_back({m.g_post, std::move(v), t});
  }
}

}  // namespace

std::vector<CounterStep> counter_successors(const ThreadSystem& sys, std::uint32_t g,
                                            const CounterVector& counts) {
  std::vector<CounterStep> out;
  for (const auto& [l, v] : counts.entries()) {
    for (const LocalMove& m : sys.moves_from(g, l)) {
      CounterVector base = counts;
      base.take(l);
      switch (m.kind) {
        case MoveKind::Plain:
          base.add(m.l_post);
          out.push_back({m.g_post, std::move(base), {}});
          break;
        case MoveKind::Terminate:
          out.push_back({m.g_post, std::move(base), {}});
          break;
        case MoveKind::Create:
          base.add(m.l_post);
          base.add(m.spawn);
          out.push_back({m.g_post, std::move(base), {}});
          break;
        case MoveKind::BroadcastSend:
          broadcast_successors(sys, m, std::move(base), out);
          break;
        case MoveKind::SignalSend: {
          bool any = false;
          for (const auto& [w, n] : base.entries()) {
            for (std::uint32_t r : sys.receivers(MoveKind::SignalSend, m.g_pre, m.g_post, w)) {
              any = true;
              CounterVector next = base;
              next.take(w);
              next.add(r);
              next.add(m.l_post);
              out.push_back({m.g_post, std::move(next), {}});
            }
          }
          if (!any) {
            base.add(m.l_post);
            Transfer guarded;
            guarded.affine = false;
            out.push_back({m.g_post, std::move(base), guarded});
          }
          break;
        }
      }
    }
  }
  return out;
}

// ---- search ----

KmResult km(const ThreadSystem& sys,
            const std::vector<std::pair<std::uint32_t, CounterVector>>& roots,
            const std::vector<TtsConfig>& targets, const KmOptions& opt) {
  KmResult res;
  Verdict& v = res.verdict;
  BudgetMeter meter(opt.budget);
  const std::uint32_t dim = sys.local_count();
  std::vector<std::pair<std::uint32_t, CounterVector>> goals;
  for (const TtsConfig& t : targets) goals.emplace_back(t.g(), CounterVector::from_config(t, dim));

  std::unordered_map<std::uint32_t, std::vector<std::size_t>> by_g;
  std::deque<std::size_t> work;
  auto covered = [&](std::uint32_t g, const CounterVector& c) {
    auto it = by_g.find(g);
    if (it == by_g.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](std::size_t i) { return dominates(res.tree[i].counts, c); });
  };
  auto hits = [&](std::uint32_t g, const CounterVector& c) {
    return std::any_of(goals.begin(), goals.end(), [&](const auto& t) {
      return t.first == g && dominates(c, t.second);
    });
  };
  // Returns true when the search may stop.
  auto add = [&](KmNode n) {
    const std::size_t idx = res.tree.size();
    v.stats.mem_bytes += sizeof(KmNode) + n.counts.entries().size() * sizeof(CounterVector::Entry) +
                         n.effect.map.size() * 8 + 2 * sizeof(std::size_t);
    by_g[n.g].push_back(idx);
    const bool hit = hits(n.g, n.counts);
    res.tree.push_back(std::move(n));
    work.push_back(idx);
    v.stats.stored = res.tree.size();
    v.stats.frontier_peak = std::max(v.stats.frontier_peak, work.size());
    if (hit && !res.hit) {
      res.hit = idx;
      v.outcome = Outcome::Found;
      if (res.tree[idx].counts.finite())
        v.witness = TtsConfig(res.tree[idx].g, res.tree[idx].counts.locals());
    }
    return hit && !opt.full;
  };

  bool done = false;
  for (const auto& [g, c] : roots) {
    if (c.dim() != dim) throw PreconditionError("root counter has the wrong length");
    if (covered(g, c)) continue;
    if (add(KmNode{g, c, std::nullopt, {}})) {
      done = true;
      break;
    }
  }
  while (!done && !work.empty()) {
    meter.check(v.stats);
    const std::size_t n = work.front();
    work.pop_front();
    ++v.stats.expanded;
    const std::uint32_t g = res.tree[n].g;
    const CounterVector counts = res.tree[n].counts;
    for (CounterStep& s : counter_successors(sys, g, counts)) {
      KmNode child{s.g, std::move(s.counts), n, std::move(s.effect)};
      child.counts = accelerate_transfer(res.tree, child);
      if (covered(child.g, child.counts)) continue;
      if (add(std::move(child))) {
        done = true;
        break;
      }
    }
  }
  v.stats.seconds = meter.elapsed();
  return res;
}

KmResult akm(const ThreadSystem& sys,
             const std::vector<std::pair<std::uint32_t, CounterVector>>& roots,
             const std::vector<TtsConfig>& targets, KmOptions opt) {
  opt.full = true;
  return km(sys, roots, targets, opt);
}

bool is_fixpoint(const ThreadSystem& sys, const std::vector<KmNode>& tree) {
  for (const KmNode& n : tree) {
    for (const CounterStep& s : counter_successors(sys, n.g, n.counts)) {
      const bool ok = std::any_of(tree.begin(), tree.end(), [&](const KmNode& m) {
        return m.g == s.g && dominates(m.counts, s.counts);
      });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace jitbp
