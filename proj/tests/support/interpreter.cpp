#include "interpreter.hpp"

#include <algorithm>

#include "jitbp/all_sat.hpp"

namespace testsupport {

using namespace jitbp;

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct Local {
  Valuation g;
  Valuation l;
};

void write(Valuation& g, Valuation& l, const Atom& a, bool v) {
  if (a.kind == AtomKind::Global)
    g.set(a.index, v);
  else
    l.set(a.index, v);
}

// One sequential statement; `jumps` receives goto results, `falls` the rest.
void exec_seq(const Stmt& s, Valuation g, Valuation l, std::vector<DataResult>& jumps,
              std::vector<Local>& falls) {
  const std::uint32_t nc = choice_count(s);
  const std::uint64_t combos = std::uint64_t{1} << nc;
  switch (s.kind()) {
    case StmtKind::Skip:
    case StmtKind::Assert:
      falls.push_back({g, l});
      return;
    case StmtKind::Goto:
      for (Pc t : s.as<GotoStmt>().targets) jumps.push_back({g, l, t});
      return;
    case StmtKind::Assume:
      for (std::uint64_t c = 0; c < combos; ++c)
        if (eval(s.as<AssumeStmt>().cond, g, l, Assignment{c, nc})) {
          falls.push_back({g, l});
          return;
        }
      return;
    case StmtKind::Assign: {
      const auto& a = s.as<AssignStmt>();
      for (std::uint64_t c = 0; c < combos; ++c) {
        const Assignment ch{c, nc};
        std::vector<bool> vals;
        for (const Expr& e : a.values) vals.push_back(eval(e, g, l, ch));
        Valuation g2 = g, l2 = l;
        for (std::size_t i = 0; i < a.targets.size(); ++i) write(g2, l2, a.targets[i], vals[i]);
        if (a.constrain && !eval(*a.constrain, g2, l2, ch)) continue;
        falls.push_back({g2, l2});
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace

std::vector<DataResult> exec_data(const BoolProgram& p, Pc pc, Valuation g, Valuation l) {
  const Stmt& s = p.stmt(pc);
  std::vector<DataResult> out;
  std::vector<Local> cur{{g, l}};
  const std::vector<Stmt> single{s};
  const std::vector<Stmt>& body = s.kind() == StmtKind::Atomic ? s.as<AtomicStmt>().body : single;
  for (const Stmt& b : body) {
    std::vector<Local> next;
    for (const Local& x : cur) exec_seq(b, x.g, x.l, out, next);
    cur.swap(next);
  }
  for (const Local& x : cur) out.push_back({x.g, x.l, p.next_pc(pc)});
  sort_unique(out);
  return out;
}

std::vector<ProgramConfig> interp_post(const BoolProgram& p, const ProgramConfig& c) {
  std::vector<ProgramConfig> out;
  const auto& ts = c.threads();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0 && ts[i] == ts[i - 1]) continue;  // same local state, same images
    std::vector<LocalState> others;
    for (std::size_t j = 0; j < ts.size(); ++j)
      if (j != i) others.push_back(ts[j]);
    const LocalState me = ts[i];
    const Stmt& s = p.stmt(me.pc);
    const Pc next = p.next_pc(me.pc);
    auto with_me = [&](std::vector<LocalState> rest, std::optional<LocalState> self) {
      if (self && self->pc != kExitPc) rest.push_back(*self);
      return rest;
    };
    switch (s.kind()) {
      case StmtKind::StartThread: {
        auto rest = with_me(others, LocalState{next, me.locals});
        rest.push_back({s.as<StartThreadStmt>().target, me.locals});
        out.emplace_back(c.shared(), std::move(rest));
        break;
      }
      case StmtKind::EndThread:
        out.emplace_back(c.shared(), others);
        break;
      case StmtKind::Wait:
        break;
      case StmtKind::Signal: {
        bool any = false;
        for (std::size_t j = 0; j < others.size(); ++j) {
          if (!p.is_wait(others[j].pc)) continue;
          any = true;
          auto rest = others;
          rest[j].pc = p.next_pc(rest[j].pc);
          out.emplace_back(c.shared(), with_me(std::move(rest), LocalState{next, me.locals}));
        }
        if (!any) out.emplace_back(c.shared(), with_me(others, LocalState{next, me.locals}));
        break;
      }
      case StmtKind::Broadcast: {
        auto rest = others;
        for (auto& o : rest)
          if (p.is_wait(o.pc)) o.pc = p.next_pc(o.pc);
        out.emplace_back(c.shared(), with_me(std::move(rest), LocalState{next, me.locals}));
        break;
      }
      default:
        for (const DataResult& r : exec_data(p, me.pc, c.shared(), me.locals))
          out.emplace_back(r.g, with_me(others, LocalState{r.pc, r.l}));
        break;
    }
  }
  sort_unique(out);
  return out;
}

std::vector<ThreadState> all_thread_states(const BoolProgram& p) {
  std::vector<ThreadState> out;
  const std::uint64_t ng = std::uint64_t{1} << p.globals().size();
  const std::uint64_t nl = std::uint64_t{1} << p.locals().size();
  for (std::uint64_t g = 0; g < ng; ++g)
    for (Pc pc = 1; pc <= p.pc_max(); ++pc)
      for (std::uint64_t l = 0; l < nl; ++l) out.push_back({Valuation{g}, {pc, Valuation{l}}});
  sort_unique(out);
  return out;
}

namespace {

template <typename T, typename Fn>
void multisets(const std::vector<T>& items, std::size_t k, Fn&& fn) {
  if (k == 0) {
    fn(std::vector<T>{});
    return;
  }
  if (items.empty()) return;
  std::vector<std::size_t> pick(k, 0);
  for (;;) {
    std::vector<T> m(k);
    for (std::size_t i = 0; i < k; ++i) m[i] = items[pick[i]];
    fn(m);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == items.size() - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[i - 1];
  }
}

}  // namespace

std::vector<ProgramConfig> all_configs(const BoolProgram& p, std::size_t max_threads) {
  std::vector<LocalState> locals;
  const std::uint64_t nl = std::uint64_t{1} << p.locals().size();
  for (Pc pc = 1; pc <= p.pc_max(); ++pc)
    for (std::uint64_t l = 0; l < nl; ++l) locals.push_back({pc, Valuation{l}});
  std::sort(locals.begin(), locals.end());
  std::vector<ProgramConfig> out;
  const std::uint64_t ng = std::uint64_t{1} << p.globals().size();
  for (std::uint64_t g = 0; g < ng; ++g)
    for (std::size_t k = 0; k <= max_threads; ++k)
      multisets(locals, k, [&](std::vector<LocalState> m) { out.emplace_back(Valuation{g}, std::move(m)); });
  sort_unique(out);
  return out;
}

std::vector<TtsConfig> all_tts_configs(std::uint32_t g_count, std::uint32_t l_count,
                                       std::size_t max_threads) {
  std::vector<std::uint32_t> locals(l_count);
  for (std::uint32_t i = 0; i < l_count; ++i) locals[i] = i;
  std::vector<TtsConfig> out;
  for (std::uint32_t g = 0; g < g_count; ++g)
    for (std::size_t k = 0; k <= max_threads; ++k)
      multisets(locals, k, [&](std::vector<std::uint32_t> m) { out.emplace_back(g, std::move(m)); });
  sort_unique(out);
  return out;
}

}  // namespace testsupport
