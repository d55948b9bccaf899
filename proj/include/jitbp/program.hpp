#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jitbp/expr.hpp"

namespace jitbp {

/// Program location. Valid locations are [1..pc_max]; kExitPc marks a thread
/// whose control fell off the end of its function.
using Pc = std::uint32_t;
inline constexpr Pc kExitPc = 0;

/// Which image directions a parsed program prepares.
enum class DirectionMode : std::uint8_t { Post, Prev, Both };

/// Direction of a single image computation.
enum class Direction : std::uint8_t { Post, Prev };

const char* to_string(DirectionMode mode);
const char* to_string(Direction dir);

constexpr bool enables(DirectionMode mode, Direction dir) {
  return mode == DirectionMode::Both ||
         (dir == Direction::Post ? mode == DirectionMode::Post : mode == DirectionMode::Prev);
}

struct Stmt;

struct SkipStmt {
  friend bool operator==(const SkipStmt&, const SkipStmt&) = default;
};
struct GotoStmt {
  std::vector<Pc> targets;
  friend bool operator==(const GotoStmt&, const GotoStmt&) = default;
};
struct AssumeStmt {
  Expr cond;
  friend bool operator==(const AssumeStmt&, const AssumeStmt&) = default;
};
/// Parallel assignment `t1, .., tn := e1, .., en [constrain c]`. The
/// constrain expression reads the post-assignment valuation.
struct AssignStmt {
  std::vector<Atom> targets;
  std::vector<Expr> values;
  std::optional<Expr> constrain;
  friend bool operator==(const AssignStmt&, const AssignStmt&) = default;
};
struct AssertStmt {
  Expr cond;
  friend bool operator==(const AssertStmt&, const AssertStmt&) = default;
};
struct StartThreadStmt {
  Pc target = 0;
  friend bool operator==(const StartThreadStmt&, const StartThreadStmt&) = default;
};
struct EndThreadStmt {
  friend bool operator==(const EndThreadStmt&, const EndThreadStmt&) = default;
};
/// Body statements are sequential only. A goto inside the body leaves the
/// block immediately; statements after it are unreachable.
struct AtomicStmt {
  std::vector<Stmt> body;
  friend bool operator==(const AtomicStmt&, const AtomicStmt&);
};
struct WaitStmt {
  friend bool operator==(const WaitStmt&, const WaitStmt&) = default;
};
struct SignalStmt {
  friend bool operator==(const SignalStmt&, const SignalStmt&) = default;
};
struct BroadcastStmt {
  friend bool operator==(const BroadcastStmt&, const BroadcastStmt&) = default;
};

enum class StmtKind : std::uint8_t {
  Skip,
  Goto,
  Assume,
  Assign,
  Assert,
  StartThread,
  EndThread,
  Atomic,
  Wait,
  Signal,
  Broadcast
};

const char* to_string(StmtKind kind);

struct Stmt {
  using Variant = std::variant<SkipStmt, GotoStmt, AssumeStmt, AssignStmt, AssertStmt,
                               StartThreadStmt, EndThreadStmt, AtomicStmt, WaitStmt,
                               SignalStmt, BroadcastStmt>;
  Variant node;

  StmtKind kind() const noexcept { return static_cast<StmtKind>(node.index()); }
  /// Skip, Goto, Assume, Assign and Assert.
  bool is_sequential() const noexcept;
  /// Statements whose effect is computed by strongest postconditions:
  /// sequential statements and atomic blocks.
  bool is_data_step() const noexcept { return is_sequential() || kind() == StmtKind::Atomic; }

  template <typename T>
  const T& as() const {
    return std::get<T>(node);
  }

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

inline bool operator==(const AtomicStmt& a, const AtomicStmt& b) { return a.body == b.body; }

/// Number of choice symbols of a statement (for atomic blocks: the maximum
/// over the body, since each body statement numbers its own choices).
std::uint32_t choice_count(const Stmt& s);

struct Function {
  std::string name;
  Pc first = 1;
  Pc last = 0;
  std::vector<std::uint32_t> locals;  // indices into the merged local list
  friend bool operator==(const Function&, const Function&) = default;
};

/// A validated Boolean program. All functions are flattened into one
/// contiguous pc space and all local declarations are merged into one local
/// variable list, so a thread state is a (globals, pc, locals) triple.
class BoolProgram {
 public:
  BoolProgram() = default;
  BoolProgram(std::vector<std::string> globals, std::vector<std::string> locals,
              std::vector<Stmt> stmts, std::vector<Function> functions,
              std::optional<Expr> init, DirectionMode mode);

  const std::vector<std::string>& globals() const noexcept { return globals_; }
  const std::vector<std::string>& locals() const noexcept { return locals_; }
  const std::vector<Function>& functions() const noexcept { return functions_; }
  const std::optional<Expr>& init() const noexcept { return init_; }
  DirectionMode mode() const noexcept { return mode_; }

  Pc pc_max() const noexcept { return static_cast<Pc>(stmts_.size()); }
  const Stmt& stmt(Pc pc) const { return stmts_.at(pc - 1); }
  const std::vector<Stmt>& stmts() const noexcept { return stmts_; }

  /// Function containing `pc`.
  const Function& function_of(Pc pc) const;
  /// Fall-through successor of `pc`: pc + 1, or kExitPc at the end of a
  /// function.
  Pc next_pc(Pc pc) const;

  bool is_wait(Pc pc) const { return pc >= 1 && pc <= pc_max() && stmt(pc).kind() == StmtKind::Wait; }
  bool has_kind(StmtKind kind) const;

  /// Structural equality of the program text (mode excluded).
  bool same_structure(const BoolProgram& other) const;

 private:
  std::vector<std::string> globals_;
  std::vector<std::string> locals_;
  std::vector<Stmt> stmts_;
  std::vector<Function> functions_;
  std::vector<std::uint32_t> function_index_;
  std::optional<Expr> init_;
  DirectionMode mode_ = DirectionMode::Both;
};

}  // namespace jitbp
