#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "jitbp/expr.hpp"
#include "jitbp/state.hpp"

namespace jitbp {

/// Total assignment over a finite, ordered domain (choice indices or an
/// explicit atom list); bit i belongs to the i-th domain element.
struct Assignment {
  std::uint64_t bits = 0;
  std::uint32_t size = 0;

  bool operator[](std::size_t i) const noexcept { return (bits >> i) & 1U; }

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Evaluates `e` with globals from `g`, locals from `l` and choice k read
/// from `choices[k]`. Throws PreconditionError on a choice index outside
/// the assignment, or on a Slot leaf.
bool eval(const Expr& e, Valuation g, Valuation l, const Assignment& choices = {});

/// All assignments over `domain` that make `e` true, sorted by bits.
/// The domain must contain every atom of `e`.
std::vector<Assignment> all_sat(const Expr& e, std::span<const Atom> domain);

/// Core enumerator shared by all_sat and the image engine. Global and Local
/// leaves read the known valuations, Slot k is the k-th unknown. Appends
/// every satisfying slot assignment (bit k = slot k) to `out`. Partial
/// assignments are evaluated three-valued so that decided subtrees are cut
/// off early. Choice leaves are rejected.
void enumerate_models(const Expr& formula, Valuation g, Valuation l, unsigned slot_count,
                      std::vector<std::uint64_t>& out);

/// True iff some slot assignment satisfies `formula`.
bool satisfiable(const Expr& formula, Valuation g, Valuation l, unsigned slot_count);

}  // namespace jitbp
