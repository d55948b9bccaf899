#pragma once

#include <cstddef>
#include <cstdint>

#include "jitbp/converter.hpp"
#include "jitbp/program.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Result of up-front translation. Local index `sink` is appended after the
/// converter's range and receives terminated threads.
struct Translation {
  Tts tts;
  std::uint32_t sink = 0;
};

/// Enumerates every thread state and emits the edges of its single-thread
/// effects. Throws CapExceeded when the number of thread states
/// (shared_count * local_count) exceeds `cap`, DirectionError when the
/// program was not parsed with forward images enabled.
Translation translate(const BoolProgram& p, const Converter& cv,
                      std::size_t cap = kDefaultStateCap);

}  // namespace jitbp
