#pragma once

#include <cstdint>
#include <vector>

#include "jitbp/explore.hpp"
#include "jitbp/thread_system.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

/// Minimal elements under the covering order; sorted, an antichain.
std::vector<TtsConfig> minimize(std::vector<TtsConfig> cs);

/// Minimal configurations p with a successor covering w. A thread that w
/// needs but no move produces is pulled into p, so p may have one thread
/// more than w.
std::vector<TtsConfig> cover_preimage(const ThreadSystem& sys, const TtsConfig& w);

enum class InitMode : std::uint8_t { Single, Param };

/// When a backward configuration counts as initial.
///   Single: it is covered by one of the explicit initial configurations.
///   Param:  its shared state is initial and all its locals are initial for
///           that shared state (any number of threads).
class InitialSet {
 public:
  static InitialSet single(std::vector<TtsConfig> configs);
  static InitialSet param(std::vector<TtsState> thread_states);

  InitMode mode() const noexcept { return mode_; }
  bool meets(const TtsConfig& p) const;

 private:
  InitMode mode_ = InitMode::Single;
  std::vector<TtsConfig> configs_;
  std::vector<TtsState> threads_;  // sorted
};

struct BwsOptions {
  Budget budget;
};

struct BwsResult {
  Verdict verdict;
  std::vector<TtsConfig> minimal;  // U at the end of the search, sorted
};

/// Backward search from the targets over minimal cover preimages. Throws
/// PreconditionError if a target already meets the initial set, and
/// BudgetExceeded.
BwsResult bws(const ThreadSystem& sys, const InitialSet& init, const std::vector<TtsConfig>& targets,
              const BwsOptions& opt = {});

}  // namespace jitbp
