#include "jitbp/image_engine.hpp"

#include <algorithm>

#include "jitbp/all_sat.hpp"
#include "jitbp/errors.hpp"
#include "jitbp/thread_sets.hpp"

namespace jitbp {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Plain: return "plain";
    case MoveKind::Create: return "create";
    case MoveKind::Terminate: return "terminate";
    case MoveKind::BroadcastSend: return "broadcast";
    case MoveKind::SignalSend: return "signal";
  }
  return "?";
}

// A statement's data effect as a formula over the known valuation and
// `slots` unknowns. The first targets.size() slots are the assigned
// variables (post values going forward, pre values going backward), the
// rest are the statement's choice symbols.
struct ImageEngine::Relation {
  Expr formula;
  unsigned slots = 0;
  std::vector<Atom> targets;
};

// The executed part of a data step: one entry for a sequential statement,
// the body up to its first goto for an atomic block.
struct ImageEngine::StepTable {
  struct Entry {
    const Stmt* stmt = nullptr;
    std::optional<Relation> fwd;
    std::optional<Relation> bwd;
  };
  std::vector<Entry> body;
  std::vector<Pc> exits;
};

namespace {

using DataSet = std::vector<std::pair<Valuation, Valuation>>;

void sort_unique(DataSet& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Expr choices_to_slots(const Expr& e, std::uint32_t base) {
  return substitute(e, [&](const Atom& a) {
    return a.kind == AtomKind::Choice ? Expr::slot(base + a.index) : Expr::var(a);
  });
}

Expr conj(Expr a, Expr b) { return Expr::binary(Op::And, std::move(a), std::move(b)); }

std::optional<std::size_t> target_index(const std::vector<Atom>& targets, const Atom& a) {
  auto it = std::find(targets.begin(), targets.end(), a);
  if (it == targets.end()) return std::nullopt;
  return static_cast<std::size_t>(it - targets.begin());
}

// Forward: Slot_i is the post value of target i.
ImageEngine::Relation compile_forward(const Stmt& s) {
  ImageEngine::Relation r;
  if (s.kind() == StmtKind::Assume) {
    r.formula = choices_to_slots(s.as<AssumeStmt>().cond, 0);
    r.slots = choice_count(s);
    return r;
  }
  const auto& a = s.as<AssignStmt>();
  const auto n = static_cast<std::uint32_t>(a.targets.size());
  r.targets = a.targets;
  r.slots = n + choice_count(s);
  Expr f = Expr::constant(true);
  for (std::uint32_t i = 0; i < n; ++i)
    f = conj(std::move(f), Expr::binary(Op::Eq, Expr::slot(i), choices_to_slots(a.values[i], n)));
  if (a.constrain) {
    Expr c = substitute(*a.constrain, [&](const Atom& x) {
      if (x.kind == AtomKind::Choice) return Expr::slot(n + x.index);
      if (auto i = target_index(a.targets, x)) return Expr::slot(static_cast<std::uint32_t>(*i));
      return Expr::var(x);
    });
    f = conj(std::move(f), std::move(c));
  }
  r.formula = std::move(f);
  return r;
}

// Backward: Global/Local leaves read the post valuation, Slot_i is the pre
// value of target i.
ImageEngine::Relation compile_backward(const Stmt& s) {
  if (s.kind() == StmtKind::Assume) return compile_forward(s);
  ImageEngine::Relation r;
  const auto& a = s.as<AssignStmt>();
  const auto n = static_cast<std::uint32_t>(a.targets.size());
  r.targets = a.targets;
  r.slots = n + choice_count(s);
  auto pre_view = [&](const Atom& x) {
    if (x.kind == AtomKind::Choice) return Expr::slot(n + x.index);
    if (auto i = target_index(a.targets, x)) return Expr::slot(static_cast<std::uint32_t>(*i));
    return Expr::var(x);
  };
  Expr f = Expr::constant(true);
  for (std::uint32_t i = 0; i < n; ++i)
    f = conj(std::move(f),
             Expr::binary(Op::Eq, Expr::var(a.targets[i]), substitute(a.values[i], pre_view)));
  if (a.constrain) f = conj(std::move(f), choices_to_slots(*a.constrain, n));
  r.formula = std::move(f);
  return r;
}

void apply_targets(const std::vector<Atom>& targets, std::uint64_t model, Valuation& g,
                   Valuation& l) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const bool v = (model >> i) & 1U;
    if (targets[i].kind == AtomKind::Global)
      g.set(targets[i].index, v);
    else
      l.set(targets[i].index, v);
  }
}

void run_relation(const ImageEngine::Relation& r, Valuation g, Valuation l, DataSet& out) {
  if (r.targets.empty()) {
    if (satisfiable(r.formula, g, l, r.slots)) out.emplace_back(g, l);
    return;
  }
  std::vector<std::uint64_t> models;
  enumerate_models(r.formula, g, l, r.slots, models);
  const std::uint64_t mask = (std::uint64_t{1} << r.targets.size()) - 1;
  for (std::uint64_t& m : models) m &= mask;
  sort_unique(models);
  for (std::uint64_t m : models) {
    Valuation g2 = g, l2 = l;
    apply_targets(r.targets, m, g2, l2);
    out.emplace_back(g2, l2);
  }
}

void remove_one(std::vector<LocalState>& v, const LocalState& x) {
  v.erase(std::find(v.begin(), v.end(), x));
}

}  // namespace

ImageEngine::ImageEngine(const BoolProgram& program)
    : program_(program), cfg_(program), tables_(program.pc_max()) {
  const bool fwd = supports(Direction::Post);
  const bool bwd = supports(Direction::Prev);
  for (Pc pc = 1; pc <= program_.pc_max(); ++pc) {
    const Stmt& s = program_.stmt(pc);
    if (!s.is_data_step()) continue;
    StepTable& t = tables_[pc - 1];
    auto add = [&](const Stmt& b) {
      StepTable::Entry e;
      e.stmt = &b;
      if (b.kind() == StmtKind::Assume || b.kind() == StmtKind::Assign) {
        if (fwd) e.fwd = compile_forward(b);
        if (bwd) e.bwd = compile_backward(b);
      }
      t.body.push_back(std::move(e));
      return b.kind() == StmtKind::Goto;
    };
    if (s.kind() == StmtKind::Atomic) {
      for (const Stmt& b : s.as<AtomicStmt>().body)
        if (add(b)) break;
    } else {
      add(s);
    }
    t.exits = cfg_.succs(pc);
  }
}

ImageEngine::~ImageEngine() = default;

void ImageEngine::require(Direction dir) const {
  if (!supports(dir))
    throw DirectionError(std::string("direction ") + to_string(dir) +
                         " not prepared in mode " + to_string(program_.mode()));
}

void ImageEngine::forward_data(const StepTable& t, Valuation g, Valuation l, DataSet& out) const {
  DataSet cur{{g, l}};
  DataSet nxt;
  for (const StepTable::Entry& e : t.body) {
    if (!e.fwd) continue;  // skip, assert and goto leave the data unchanged
    nxt.clear();
    for (const auto& [g0, l0] : cur) run_relation(*e.fwd, g0, l0, nxt);
    sort_unique(nxt);
    cur.swap(nxt);
    if (cur.empty()) break;
  }
  out.insert(out.end(), cur.begin(), cur.end());
}

void ImageEngine::backward_data(const StepTable& t, Valuation g, Valuation l,
                                DataSet& out) const {
  DataSet cur{{g, l}};
  DataSet nxt;
  for (auto it = t.body.rbegin(); it != t.body.rend(); ++it) {
    if (!it->bwd) continue;
    nxt.clear();
    for (const auto& [g0, l0] : cur) run_relation(*it->bwd, g0, l0, nxt);
    sort_unique(nxt);
    cur.swap(nxt);
    if (cur.empty()) break;
  }
  out.insert(out.end(), cur.begin(), cur.end());
}

std::vector<ThreadState> ImageEngine::sp_stmt(const ThreadState& pre) const {
  require(Direction::Post);
  const Pc pc = pre.local.pc;
  if (pc < 1 || pc > program_.pc_max() || !program_.stmt(pc).is_data_step())
    throw PreconditionError("sp_stmt needs a sequential or atomic statement at pc " +
                            std::to_string(pc));
  const StepTable& t = tables_[pc - 1];
  DataSet data;
  forward_data(t, pre.shared, pre.local.locals, data);
  std::vector<ThreadState> out;
  for (const auto& [g, l] : data)
    for (Pc q : t.exits) out.push_back({g, {q, l}});
  sort_unique(out);
  return out;
}

std::vector<ThreadState> ImageEngine::wp_stmt(Pc pc, const ThreadState& post) const {
  require(Direction::Prev);
  if (pc < 1 || pc > program_.pc_max() || !program_.stmt(pc).is_data_step())
    throw PreconditionError("wp_stmt needs a sequential or atomic statement at pc " +
                            std::to_string(pc));
  const StepTable& t = tables_[pc - 1];
  std::vector<ThreadState> out;
  if (!std::binary_search(t.exits.begin(), t.exits.end(), post.local.pc)) return out;
  DataSet data;
  backward_data(t, post.shared, post.local.locals, data);
  for (const auto& [g, l] : data) out.push_back({g, {pc, l}});
  return out;
}

std::vector<ThreadMove> ImageEngine::moves_from(const ThreadState& s) const {
  require(Direction::Post);
  std::vector<ThreadMove> out;
  const Pc pc = s.local.pc;
  const Stmt& st = program_.stmt(pc);
  auto simple = [&](MoveKind k) {
    ThreadMove m{k, s, s.shared, {program_.next_pc(pc), s.local.locals}, {}};
    return m;
  };
  switch (st.kind()) {
    case StmtKind::StartThread: {
      ThreadMove m = simple(MoveKind::Create);
      m.spawn = {st.as<StartThreadStmt>().target, s.local.locals};
      out.push_back(m);
      break;
    }
    case StmtKind::EndThread:
      out.push_back({MoveKind::Terminate, s, s.shared, {}, {}});
      break;
    case StmtKind::Wait:
      break;
    case StmtKind::Signal:
      out.push_back(simple(MoveKind::SignalSend));
      break;
    case StmtKind::Broadcast:
      out.push_back(simple(MoveKind::BroadcastSend));
      break;
    default:
      for (const ThreadState& t : sp_stmt(s)) {
        if (t.local.pc == kExitPc)
          out.push_back({MoveKind::Terminate, s, t.shared, {}, {}});
        else
          out.push_back({MoveKind::Plain, s, t.shared, t.local, {}});
      }
  }
  return out;
}

std::vector<ThreadMove> ImageEngine::moves_to(const ThreadState& post) const {
  require(Direction::Prev);
  std::vector<ThreadMove> out;
  const Pc q = post.local.pc;
  if (q < 1 || q > program_.pc_max()) return out;
  for (const CfgEdge& e : cfg_.preds(q)) {
    if (e.tag != CfgTag::Flow) continue;
    const Stmt& st = program_.stmt(e.source);
    const ThreadState pre{post.shared, {e.source, post.local.locals}};
    switch (st.kind()) {
      case StmtKind::StartThread:
        out.push_back({MoveKind::Create, pre, post.shared, post.local,
                       {st.as<StartThreadStmt>().target, post.local.locals}});
        break;
      case StmtKind::Signal:
        out.push_back({MoveKind::SignalSend, pre, post.shared, post.local, {}});
        break;
      case StmtKind::Broadcast:
        out.push_back({MoveKind::BroadcastSend, pre, post.shared, post.local, {}});
        break;
      case StmtKind::Wait:
        break;  // released by another thread, never an active move
      default:
        for (const ThreadState& p : wp_stmt(e.source, post))
          out.push_back({MoveKind::Plain, p, post.shared, post.local, {}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ThreadState> ImageEngine::exit_preimages(Pc pc, Valuation shared_post) const {
  std::vector<ThreadState> out;
  for_each_valuation(program_.locals().size(), [&](Valuation l) {
    for (const ThreadState& p : wp_stmt(pc, {shared_post, {kExitPc, l}})) out.push_back(p);
  });
  return out;
}

std::vector<ThreadMove> ImageEngine::moves_into(Valuation shared_post) const {
  require(Direction::Prev);
  std::vector<ThreadMove> out;
  for (Pc q = 1; q <= program_.pc_max(); ++q) {
    for_each_valuation(program_.locals().size(), [&](Valuation l) {
      for (ThreadMove& m : moves_to({shared_post, {q, l}})) out.push_back(std::move(m));
    });
  }
  for (ThreadMove& m : terminations_into(shared_post)) out.push_back(std::move(m));
  sort_unique(out);
  return out;
}

std::vector<ThreadMove> ImageEngine::terminations_into(Valuation shared_post) const {
  require(Direction::Prev);
  std::vector<ThreadMove> out;
  for (const CfgEdge& e : cfg_.exit_preds())
    for (const ThreadState& p : exit_preimages(e.source, shared_post))
      out.push_back({MoveKind::Terminate, p, shared_post, {}, {}});
  for (Pc pc = 1; pc <= program_.pc_max(); ++pc) {
    if (program_.stmt(pc).kind() != StmtKind::EndThread) continue;
    for_each_valuation(program_.locals().size(), [&](Valuation l) {
      ThreadState pre{shared_post, {pc, l}};
      out.push_back({MoveKind::Terminate, pre, shared_post, {}, {}});
    });
  }
  sort_unique(out);
  return out;
}

std::vector<ProgramConfig> ImageEngine::post_config(const ProgramConfig& c) const {
  require(Direction::Post);
  std::vector<ProgramConfig> out;
  const auto& threads = c.threads();
  for (std::size_t i = 0; i < threads.size(); ++i) {
    if (i > 0 && threads[i] == threads[i - 1]) continue;
    std::vector<LocalState> others = threads;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    for (const ThreadMove& m : moves_from({c.shared(), threads[i]})) {
      std::vector<LocalState> next = others;
      switch (m.kind) {
        case MoveKind::Plain:
          next.push_back(m.post);
          out.emplace_back(m.shared_post, std::move(next));
          break;
        case MoveKind::Terminate:
          out.emplace_back(m.shared_post, std::move(next));
          break;
        case MoveKind::Create:
          next.push_back(m.post);
          next.push_back(m.spawn);
          out.emplace_back(m.shared_post, std::move(next));
          break;
        case MoveKind::BroadcastSend:
          for (LocalState& t : next)
            if (is_waiting(t)) t.pc = program_.next_pc(t.pc);
          next.push_back(m.post);
          out.emplace_back(m.shared_post, std::move(next));
          break;
        case MoveKind::SignalSend: {
          bool any = false;
          for (std::size_t j = 0; j < others.size(); ++j) {
            if (!is_waiting(others[j]) || (j > 0 && others[j] == others[j - 1])) continue;
            any = true;
            std::vector<LocalState> woken = others;
            woken[j].pc = program_.next_pc(woken[j].pc);
            woken.push_back(m.post);
            out.emplace_back(m.shared_post, std::move(woken));
          }
          if (!any) {
            next.push_back(m.post);
            out.emplace_back(m.shared_post, std::move(next));
          }
          break;
        }
      }
    }
  }
  sort_unique(out);
  return out;
}

std::vector<ProgramConfig> ImageEngine::pre_config(const ProgramConfig& c) const {
  require(Direction::Prev);
  std::vector<ProgramConfig> out;
  const auto& threads = c.threads();
  // A thread at q may have been released from a wait at q - 1.
  auto released_from = [&](const LocalState& t) -> std::optional<LocalState> {
    if (t.pc >= 2 && program_.is_wait(t.pc - 1) && program_.next_pc(t.pc - 1) == t.pc)
      return LocalState{t.pc - 1, t.locals};
    return std::nullopt;
  };

  for (std::size_t i = 0; i < threads.size(); ++i) {
    if (i > 0 && threads[i] == threads[i - 1]) continue;
    std::vector<LocalState> rest = threads;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    for (const ThreadMove& m : moves_to({c.shared(), threads[i]})) {
      switch (m.kind) {
        case MoveKind::Plain: {
          std::vector<LocalState> pre = rest;
          pre.push_back(m.pre.local);
          out.emplace_back(m.pre.shared, std::move(pre));
          break;
        }
        case MoveKind::Create: {
          if (std::find(rest.begin(), rest.end(), m.spawn) == rest.end()) break;
          std::vector<LocalState> pre = rest;
          remove_one(pre, m.spawn);
          pre.push_back(m.pre.local);
          out.emplace_back(m.pre.shared, std::move(pre));
          break;
        }
        case MoveKind::BroadcastSend: {
          // Every passive thread either stayed (and was not waiting) or was
          // released from the wait just before its pc.
          std::vector<std::vector<LocalState>> options(rest.size());
          bool feasible = true;
          for (std::size_t j = 0; j < rest.size(); ++j) {
            if (!is_waiting(rest[j])) options[j].push_back(rest[j]);
            if (auto r = released_from(rest[j])) options[j].push_back(*r);
            if (options[j].empty()) feasible = false;
          }
          if (!feasible) break;
          std::vector<std::size_t> pick(rest.size(), 0);
          for (;;) {
            std::vector<LocalState> pre;
            pre.reserve(rest.size() + 1);
            for (std::size_t j = 0; j < rest.size(); ++j) pre.push_back(options[j][pick[j]]);
            pre.push_back(m.pre.local);
            out.emplace_back(m.pre.shared, std::move(pre));
            std::size_t j = 0;
            while (j < pick.size() && ++pick[j] == options[j].size()) pick[j++] = 0;
            if (j == pick.size()) break;
          }
          break;
        }
        case MoveKind::SignalSend: {
          // No waiter: nobody else was waiting.
          if (std::none_of(rest.begin(), rest.end(),
                           [&](const LocalState& t) { return is_waiting(t); })) {
            std::vector<LocalState> pre = rest;
            pre.push_back(m.pre.local);
            out.emplace_back(m.pre.shared, std::move(pre));
          }
          // One waiter released.
          for (std::size_t j = 0; j < rest.size(); ++j) {
            if (j > 0 && rest[j] == rest[j - 1]) continue;
            auto r = released_from(rest[j]);
            if (!r) continue;
            std::vector<LocalState> pre = rest;
            pre[j] = *r;
            pre.push_back(m.pre.local);
            out.emplace_back(m.pre.shared, std::move(pre));
          }
          break;
        }
        case MoveKind::Terminate:
          break;
      }
    }
  }

  // Termination: one more thread that disappeared.
  for (const ThreadMove& m : terminations_into(c.shared())) {
    std::vector<LocalState> pre = threads;
    pre.push_back(m.pre.local);
    out.emplace_back(m.pre.shared, std::move(pre));
  }
  sort_unique(out);
  return out;
}

}  // namespace jitbp
