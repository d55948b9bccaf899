#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jitbp/cfg.hpp"
#include "jitbp/expr.hpp"
#include "jitbp/program.hpp"
#include "jitbp/state.hpp"

namespace jitbp {

/// How the active thread's step affects the rest of the configuration.
enum class MoveKind : std::uint8_t {
  Plain,          // data step; passive threads untouched
  Create,         // creator advances, a new thread appears at `spawn`
  Terminate,      // the active thread disappears
  BroadcastSend,  // every waiting passive thread is released
  SignalSend,     // one waiting passive thread is released, if any
};

const char* to_string(MoveKind kind);

/// One step of a single thread: (shared, local) -> (shared_post, post).
/// `post` is meaningless for Terminate, `spawn` only used by Create.
struct ThreadMove {
  MoveKind kind = MoveKind::Plain;
  ThreadState pre;
  Valuation shared_post;
  LocalState post;
  LocalState spawn;

  friend auto operator<=>(const ThreadMove&, const ThreadMove&) = default;
};

/// Image computations on program states of one Boolean program.
///
/// Each assignment and assume statement is compiled, per enabled direction,
/// into a relation over the known valuation and a handful of unknowns (the
/// assigned variables and the statement's choice symbols). Images are
/// obtained by instantiating the relation with the current valuation and
/// enumerating its models, so the cost depends on the statement, not on the
/// number of program variables.
///
/// The engine borrows the program, which must outlive it. All members are
/// const and safe to call concurrently.
class ImageEngine {
 public:
  explicit ImageEngine(const BoolProgram& program);
  ~ImageEngine();
  ImageEngine(const ImageEngine&) = delete;
  ImageEngine& operator=(const ImageEngine&) = delete;

  const BoolProgram& program() const noexcept { return program_; }
  const Cfg& cfg() const noexcept { return cfg_; }
  bool supports(Direction dir) const noexcept { return enables(program_.mode(), dir); }

  /// Strongest postcondition of the data step at `pre.local.pc`. Results may
  /// carry pc == kExitPc when control leaves the function.
  std::vector<ThreadState> sp_stmt(const ThreadState& pre) const;

  /// Weakest precondition of the data step at `pc` for the given post
  /// state: exactly the pre states (at `pc`) whose sp contains `post`.
  std::vector<ThreadState> wp_stmt(Pc pc, const ThreadState& post) const;

  /// Successor configurations under the multi-threaded semantics.
  std::vector<ProgramConfig> post_config(const ProgramConfig& c) const;

  /// Exact predecessor configurations: c0 is returned iff c is in post(c0).
  std::vector<ProgramConfig> pre_config(const ProgramConfig& c) const;

  /// Active-thread moves out of one thread state.
  std::vector<ThreadMove> moves_from(const ThreadState& s) const;

  /// Active-thread moves whose post state is exactly `post` (Terminate
  /// moves are excluded since they have no post state).
  std::vector<ThreadMove> moves_to(const ThreadState& post) const;

  /// Every active-thread move whose post shared valuation is `shared_post`,
  /// including Terminate moves. Enumerates all local valuations, so it is
  /// exponential in the number of locals (not globals).
  std::vector<ThreadMove> moves_into(Valuation shared_post) const;

  /// The Terminate moves among moves_into(shared_post).
  std::vector<ThreadMove> terminations_into(Valuation shared_post) const;

  /// Thread at a wait statement; released threads move to pc + 1.
  bool is_waiting(const LocalState& l) const { return program_.is_wait(l.pc); }

  // Compiled statement tables; defined in the implementation file.
  struct Relation;
  struct StepTable;

 private:

  void require(Direction dir) const;
  void forward_data(const StepTable& t, Valuation g, Valuation l,
                    std::vector<std::pair<Valuation, Valuation>>& out) const;
  void backward_data(const StepTable& t, Valuation g, Valuation l,
                     std::vector<std::pair<Valuation, Valuation>>& out) const;
  std::vector<ThreadState> exit_preimages(Pc pc, Valuation shared_post) const;

  const BoolProgram& program_;
  Cfg cfg_;
  std::vector<StepTable> tables_;  // indexed by pc - 1
};

}  // namespace jitbp
