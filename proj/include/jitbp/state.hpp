#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jitbp/program.hpp"

namespace jitbp {

/// Bit vector over a declared variable list; bit i holds the i-th declared
/// variable. Lists are limited to 64 variables.
struct Valuation {
  std::uint64_t bits = 0;

  bool operator[](std::size_t i) const noexcept { return (bits >> i) & 1U; }
  void set(std::size_t i, bool v) noexcept {
    bits = v ? (bits | (std::uint64_t{1} << i)) : (bits & ~(std::uint64_t{1} << i));
  }

  friend auto operator<=>(const Valuation&, const Valuation&) = default;
};

/// Per-thread part of a program state.
struct LocalState {
  Pc pc = 1;
  Valuation locals;

  friend auto operator<=>(const LocalState&, const LocalState&) = default;
};

/// A single-thread program state (g, l).
struct ThreadState {
  Valuation shared;
  LocalState local;

  friend auto operator<=>(const ThreadState&, const ThreadState&) = default;
};

/// A state of the unbounded-thread program: shared valuation plus a multiset
/// of thread-local states, kept sorted so that equality ignores thread order.
class ProgramConfig {
 public:
  ProgramConfig() = default;
  ProgramConfig(Valuation shared, std::vector<LocalState> threads);

  const Valuation& shared() const noexcept { return shared_; }
  const std::vector<LocalState>& threads() const noexcept { return threads_; }
  std::size_t size() const noexcept { return threads_.size(); }

  friend auto operator<=>(const ProgramConfig&, const ProgramConfig&) = default;

 private:
  Valuation shared_;
  std::vector<LocalState> threads_;
};

std::string to_string(const LocalState& l, const BoolProgram& p);
std::string to_string(const ProgramConfig& c, const BoolProgram& p);

}  // namespace jitbp
