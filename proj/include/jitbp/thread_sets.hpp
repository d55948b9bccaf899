#pragma once

#include <vector>

#include "jitbp/program.hpp"
#include "jitbp/state.hpp"

namespace jitbp {

/// Thread states at pc 1 whose valuation satisfies the init constraint
/// (every valuation when there is none). Sorted.
std::vector<ThreadState> initial_thread_states(const BoolProgram& p);

/// Thread states sitting at an assert whose condition is false for some
/// resolution of its choice symbols. Sorted.
std::vector<ThreadState> final_thread_states(const BoolProgram& p);

/// Invokes fn(Valuation) for every valuation of `width` variables, in
/// ascending numeric order.
template <typename Fn>
void for_each_valuation(std::size_t width, Fn&& fn) {
  const std::uint64_t n = std::uint64_t{1} << width;
  for (std::uint64_t v = 0; v < n; ++v) fn(Valuation{v});
}

}  // namespace jitbp
