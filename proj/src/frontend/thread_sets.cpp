#include "jitbp/thread_sets.hpp"

#include <algorithm>

#include "jitbp/all_sat.hpp"

namespace jitbp {

std::vector<ThreadState> initial_thread_states(const BoolProgram& p) {
  std::vector<ThreadState> out;
  for_each_valuation(p.globals().size(), [&](Valuation g) {
    for_each_valuation(p.locals().size(), [&](Valuation l) {
      if (!p.init() || eval(*p.init(), g, l)) out.push_back({g, {1, l}});
    });
  });
  return out;
}

std::vector<ThreadState> final_thread_states(const BoolProgram& p) {
  std::vector<ThreadState> out;
  for (Pc pc = 1; pc <= p.pc_max(); ++pc) {
    if (p.stmt(pc).kind() != StmtKind::Assert) continue;
    const Expr& cond = p.stmt(pc).as<AssertStmt>().cond;
    const std::uint32_t k = choice_count(cond);
    for_each_valuation(p.globals().size(), [&](Valuation g) {
      for_each_valuation(p.locals().size(), [&](Valuation l) {
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
          if (!eval(cond, g, l, Assignment{c, k})) {
            out.push_back({g, {pc, l}});
            return;
          }
        }
      });
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace jitbp
