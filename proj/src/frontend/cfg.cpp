#include "jitbp/cfg.hpp"

#include <algorithm>

namespace jitbp {

std::vector<Pc> control_successors(const BoolProgram& p, Pc pc) {
  const Stmt& s = p.stmt(pc);
  std::vector<Pc> out;
  switch (s.kind()) {
    case StmtKind::Goto:
      out = s.as<GotoStmt>().targets;
      break;
    case StmtKind::EndThread:
      break;
    case StmtKind::Atomic: {
      const auto& body = s.as<AtomicStmt>().body;
      auto g = std::find_if(body.begin(), body.end(),
                            [](const Stmt& b) { return b.kind() == StmtKind::Goto; });
      if (g != body.end())
        out = g->as<GotoStmt>().targets;
      else
        out.push_back(p.next_pc(pc));
      break;
    }
    default:
      out.push_back(p.next_pc(pc));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cfg::Cfg(const BoolProgram& p) : preds_(p.pc_max() + 1), succs_(p.pc_max() + 1) {
  for (Pc pc = 1; pc <= p.pc_max(); ++pc) {
    succs_[pc] = control_successors(p, pc);
    for (Pc q : succs_[pc]) preds_[q].push_back({pc, CfgTag::Flow});
    if (p.stmt(pc).kind() == StmtKind::StartThread)
      preds_[p.stmt(pc).as<StartThreadStmt>().target].push_back({pc, CfgTag::Spawn});
  }
  for (auto& v : preds_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

Cfg build_cfg(const BoolProgram& p) { return Cfg(p); }

}  // namespace jitbp
