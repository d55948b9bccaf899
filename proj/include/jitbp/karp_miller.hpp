#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jitbp/explore.hpp"
#include "jitbp/thread_system.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

/// A natural number or omega. Every natural is below omega; omega absorbs
/// additions and subtractions.
class OmegaNat {
 public:
  constexpr OmegaNat() = default;
  constexpr OmegaNat(std::uint64_t v) : v_(v) {}  // NOLINT: implicit by design
  static constexpr OmegaNat omega() { return OmegaNat(kOmega); }

  constexpr bool is_omega() const noexcept { return v_ == kOmega; }
  constexpr std::uint64_t value() const noexcept { return v_; }

  friend constexpr OmegaNat operator+(OmegaNat a, OmegaNat b) {
    if (a.is_omega() || b.is_omega()) return omega();
    return OmegaNat(a.v_ + b.v_);
  }
  /// Precondition: *this >= k.
  constexpr OmegaNat minus(std::uint64_t k) const { return is_omega() ? *this : OmegaNat(v_ - k); }

  friend constexpr auto operator<=>(OmegaNat, OmegaNat) = default;

 private:
  static constexpr std::uint64_t kOmega = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v_ = 0;
};

std::string to_string(OmegaNat v);

/// Thread counts per local state, stored sparsely (zero entries omitted).
class CounterVector {
 public:
  using Entry = std::pair<std::uint32_t, OmegaNat>;

  CounterVector() = default;
  explicit CounterVector(std::uint32_t dim) : dim_(dim) {}
  CounterVector(std::uint32_t dim, std::vector<Entry> entries);
  static CounterVector from_config(const TtsConfig& c, std::uint32_t dim);

  std::uint32_t dim() const noexcept { return dim_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  OmegaNat get(std::uint32_t l) const;
  void set(std::uint32_t l, OmegaNat v);
  void add(std::uint32_t l, OmegaNat k = 1);
  /// Removes one thread at l (omega stays omega). Precondition: get(l) > 0.
  void take(std::uint32_t l);

  bool finite() const;
  /// Multiset view; only for finite vectors.
  std::vector<std::uint32_t> locals() const;

  friend bool operator==(const CounterVector&, const CounterVector&) = default;

 private:
  std::uint32_t dim_ = 0;
  std::vector<Entry> entries_;
};

/// Componentwise a >= b. Throws PreconditionError on a dimension mismatch.
bool dominates(const CounterVector& a, const CounterVector& b);

/// Linear part of a step's effect on the counters: threads at `from` end up
/// at `to`; indices not listed stay put. Broadcast releases are the only
/// non-identity entries. Steps whose outcome is not of this form (a signal
/// finding no waiter, a broadcast with several receiver choices) are marked
/// non-affine and stop acceleration.
struct Transfer {
  bool affine = true;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> map;  // sorted by `from`

  std::uint32_t operator()(std::uint32_t l) const;
  /// (this o first)(l) = this(first(l)).
  Transfer after(const Transfer& first) const;
};

struct KmNode {
  std::uint32_t g = 0;
  CounterVector counts;
  std::optional<std::size_t> parent;
  Transfer effect;  // from the parent's label to this node's, before acceleration
};

/// a covers b: equal shared state and a.counts >= b.counts componentwise.
bool covers(const KmNode& a, const KmNode& b);

/// Textbook acceleration against the ancestors of `node` in `tree`: for
/// every ancestor with the same shared state and strictly smaller counts,
/// the strictly larger entries become omega; repeated to a fixpoint.
CounterVector accelerate(const std::vector<KmNode>& tree, const KmNode& node);

/// Acceleration used by km(): like accelerate() on paths without broadcast
/// transfers. When releases move threads between locals, the entries that
/// grow without bound under repetition of the path are the cycles of the
/// composed transfer map fed by a positive difference; exactly those become
/// omega. Ancestors behind a non-affine step are ignored.
CounterVector accelerate_transfer(const std::vector<KmNode>& tree, const KmNode& node);

/// Successors of a counter node: (shared, counts, transfer).
struct CounterStep {
  std::uint32_t g = 0;
  CounterVector counts;
  Transfer effect;
};
std::vector<CounterStep> counter_successors(const ThreadSystem& sys, std::uint32_t g,
                                            const CounterVector& counts);

struct KmOptions {
  Budget budget;
  /// Build the complete tree instead of stopping at the first hit.
  bool full = false;
};

struct KmResult {
  Verdict verdict;
  std::vector<KmNode> tree;  // roots first; children after their parents
  std::optional<std::size_t> hit;  // index of the first node covering a target
};

/// Karp-Miller search from `roots` (pairs of shared state and counters),
/// breadth first. A new child is dropped if an existing node covers it.
/// Found as soon as a node covers one of `targets`. Throws BudgetExceeded.
KmResult km(const ThreadSystem& sys, const std::vector<std::pair<std::uint32_t, CounterVector>>& roots,
            const std::vector<TtsConfig>& targets, const KmOptions& opt = {});

/// km() with full = true.
KmResult akm(const ThreadSystem& sys,
             const std::vector<std::pair<std::uint32_t, CounterVector>>& roots,
             const std::vector<TtsConfig>& targets, KmOptions opt = {});

/// True if every successor of every node in the tree is covered by some
/// node of the tree.
bool is_fixpoint(const ThreadSystem& sys, const std::vector<KmNode>& tree);

}  // namespace jitbp
