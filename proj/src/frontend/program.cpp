#include "jitbp/program.hpp"

#include <algorithm>

#include "jitbp/errors.hpp"

namespace jitbp {

const char* to_string(DirectionMode mode) {
  switch (mode) {
    case DirectionMode::Post: return "post";
    case DirectionMode::Prev: return "prev";
    case DirectionMode::Both: return "both";
  }
  return "?";
}

const char* to_string(Direction dir) { return dir == Direction::Post ? "post" : "prev"; }

const char* to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::Skip: return "skip";
    case StmtKind::Goto: return "goto";
    case StmtKind::Assume: return "assume";
    case StmtKind::Assign: return "assign";
    case StmtKind::Assert: return "assert";
    case StmtKind::StartThread: return "start_thread";
    case StmtKind::EndThread: return "end_thread";
    case StmtKind::Atomic: return "atomic";
    case StmtKind::Wait: return "wait";
    case StmtKind::Signal: return "signal";
    case StmtKind::Broadcast: return "broadcast";
  }
  return "?";
}

bool Stmt::is_sequential() const noexcept {
  switch (kind()) {
    case StmtKind::Skip:
    case StmtKind::Goto:
    case StmtKind::Assume:
    case StmtKind::Assign:
    case StmtKind::Assert:
      return true;
    default:
      return false;
  }
}

std::uint32_t choice_count(const Stmt& s) {
  switch (s.kind()) {
    case StmtKind::Assume:
      return choice_count(s.as<AssumeStmt>().cond);
    case StmtKind::Assert:
      return choice_count(s.as<AssertStmt>().cond);
    case StmtKind::Assign: {
      const auto& a = s.as<AssignStmt>();
      std::uint32_t n = 0;
      for (const Expr& e : a.values) n = std::max(n, choice_count(e));
      if (a.constrain) n = std::max(n, choice_count(*a.constrain));
      return n;
    }
    case StmtKind::Atomic: {
      std::uint32_t n = 0;
      for (const Stmt& b : s.as<AtomicStmt>().body) n = std::max(n, choice_count(b));
      return n;
    }
    default:
      return 0;
  }
}

BoolProgram::BoolProgram(std::vector<std::string> globals, std::vector<std::string> locals,
                         std::vector<Stmt> stmts, std::vector<Function> functions,
                         std::optional<Expr> init, DirectionMode mode)
    : globals_(std::move(globals)),
      locals_(std::move(locals)),
      stmts_(std::move(stmts)),
      functions_(std::move(functions)),
      init_(std::move(init)),
      mode_(mode) {
  if (globals_.size() > 32 || locals_.size() > 32)
    throw PreconditionError("at most 32 globals and 32 locals are supported");
  function_index_.assign(stmts_.size(), 0);
  for (std::uint32_t f = 0; f < functions_.size(); ++f) {
    const Function& fn = functions_[f];
    if (fn.first < 1 || fn.last > stmts_.size() || fn.first > fn.last)
      throw PreconditionError("function '" + fn.name + "' has an invalid pc range");
    for (Pc pc = fn.first; pc <= fn.last; ++pc) function_index_[pc - 1] = f;
  }
}

const Function& BoolProgram::function_of(Pc pc) const {
  if (pc < 1 || pc > pc_max()) throw PreconditionError("pc " + std::to_string(pc) + " out of range");
  return functions_.at(function_index_[pc - 1]);
}

Pc BoolProgram::next_pc(Pc pc) const { return pc == function_of(pc).last ? kExitPc : pc + 1; }

bool BoolProgram::has_kind(StmtKind kind) const {
  return std::any_of(stmts_.begin(), stmts_.end(), [&](const Stmt& s) { return s.kind() == kind; });
}

bool BoolProgram::same_structure(const BoolProgram& o) const {
  return globals_ == o.globals_ && locals_ == o.locals_ && stmts_ == o.stmts_ &&
         init_ == o.init_ && functions_ == o.functions_;
}

}  // namespace jitbp
