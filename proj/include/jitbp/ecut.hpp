#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jitbp/explore.hpp"
#include "jitbp/program.hpp"
#include "jitbp/stepper.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

struct EcutRound {
  std::size_t n = 0;
  std::size_t configs = 0;               // reachable configurations of the n-thread instance
  std::vector<TtsState> thread_states;   // R(n), sorted
};

struct EcutReport {
  /// First n with R(n) = R(n + 1). This is a plateau, reported as a
  /// candidate cutoff; it is not a proof that no larger n adds states.
  std::optional<std::size_t> candidate_cutoff;
  std::vector<EcutRound> rounds;
  bool monotone = true;  // R(n) subset of R(n + 1) held in every round
  Stats stats;
};

struct EcutOptions {
  std::size_t n_start = 1;
  std::size_t n_max = 16;
  Budget budget;
};

/// Throws PreconditionError if the program creates or terminates threads.
void require_fixed_threads(const BoolProgram& p);
/// Same for a TTS: rejects creation edges.
void require_fixed_threads(const Tts& t);

/// All configurations of n threads whose shared state is g and whose locals
/// are initial for g, over every initial g.
std::vector<TtsConfig> instance_configs(const std::vector<TtsState>& initial_threads,
                                        std::size_t n);

/// Runs breadth-first search on the n-thread instances for increasing n
/// until R(n) = R(n + 1) or n_max is passed. Throws BudgetExceeded.
EcutReport ecut(const Stepper& post, const std::vector<TtsState>& initial_threads,
                const EcutOptions& opt = {});

}  // namespace jitbp
