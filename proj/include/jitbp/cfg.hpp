#pragma once

#include <compare>
#include <vector>

#include "jitbp/program.hpp"

namespace jitbp {

enum class CfgTag : std::uint8_t {
  Flow,   // ordinary control transfer of the executing thread
  Spawn,  // start location of a thread created by start_thread
};

struct CfgEdge {
  Pc source = 0;
  CfgTag tag = CfgTag::Flow;

  friend auto operator<=>(const CfgEdge&, const CfgEdge&) = default;
};

/// Predecessor relation of the flattened program. preds(q) lists each
/// (source, tag) at most once, sorted. Wait statements count as flowing to
/// pc + 1 (the release by signal or broadcast).
class Cfg {
 public:
  Cfg() = default;
  explicit Cfg(const BoolProgram& p);

  const std::vector<CfgEdge>& preds(Pc q) const { return preds_.at(q); }
  /// Statements whose fall-through leaves the function (thread termination).
  const std::vector<CfgEdge>& exit_preds() const { return preds_.at(kExitPc); }
  /// Control successors of the statement at `pc`, Flow edges only; may
  /// contain kExitPc.
  const std::vector<Pc>& succs(Pc pc) const { return succs_.at(pc); }

 private:
  std::vector<std::vector<CfgEdge>> preds_;  // indexed by pc, slot 0 = exit
  std::vector<std::vector<Pc>> succs_;
};

Cfg build_cfg(const BoolProgram& p);

/// Flow successors of a single statement located at `pc`.
std::vector<Pc> control_successors(const BoolProgram& p, Pc pc);

}  // namespace jitbp
