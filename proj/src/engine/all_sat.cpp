#include "jitbp/all_sat.hpp"

#include <algorithm>

#include "jitbp/errors.hpp"

namespace jitbp {

bool eval(const Expr& e, Valuation g, Valuation l, const Assignment& choices) {
  switch (e.op()) {
    case Op::Const:
      return e.value();
    case Op::Var: {
      const Atom& a = e.atom();
      switch (a.kind) {
        case AtomKind::Global:
          return g[a.index];
        case AtomKind::Local:
          return l[a.index];
        case AtomKind::Choice:
          if (a.index >= choices.size)
            throw PreconditionError("unresolved choice index " + std::to_string(a.index));
          return choices[a.index];
        case AtomKind::Slot:
          throw PreconditionError("slot leaf in eval");
      }
      return false;
    }
    case Op::Not:
      return !eval(e.operand(), g, l, choices);
    case Op::And:
      return eval(e.lhs(), g, l, choices) && eval(e.rhs(), g, l, choices);
    case Op::Or:
      return eval(e.lhs(), g, l, choices) || eval(e.rhs(), g, l, choices);
    case Op::Xor:
      return eval(e.lhs(), g, l, choices) != eval(e.rhs(), g, l, choices);
    case Op::Eq:
      return eval(e.lhs(), g, l, choices) == eval(e.rhs(), g, l, choices);
  }
  return false;
}

namespace {

enum class Tri : std::uint8_t { False, True, Unknown };

struct Partial {
  Valuation g;
  Valuation l;
  std::uint64_t known = 0;  // mask of decided slots
  std::uint64_t bits = 0;
};

Tri eval3(const Expr& e, const Partial& p) {
  switch (e.op()) {
    case Op::Const:
      return e.value() ? Tri::True : Tri::False;
    case Op::Var: {
      const Atom& a = e.atom();
      switch (a.kind) {
        case AtomKind::Global:
          return p.g[a.index] ? Tri::True : Tri::False;
        case AtomKind::Local:
          return p.l[a.index] ? Tri::True : Tri::False;
        case AtomKind::Slot:
          if (!((p.known >> a.index) & 1U)) return Tri::Unknown;
          return ((p.bits >> a.index) & 1U) ? Tri::True : Tri::False;
        case AtomKind::Choice:
          throw PreconditionError("choice leaf in a model query");
      }
      return Tri::Unknown;
    }
    case Op::Not: {
      Tri v = eval3(e.operand(), p);
      return v == Tri::Unknown ? v : (v == Tri::True ? Tri::False : Tri::True);
    }
    case Op::And: {
      Tri a = eval3(e.lhs(), p);
      if (a == Tri::False) return a;
      Tri b = eval3(e.rhs(), p);
      if (b == Tri::False) return b;
      return (a == Tri::True && b == Tri::True) ? Tri::True : Tri::Unknown;
    }
    case Op::Or: {
      Tri a = eval3(e.lhs(), p);
      if (a == Tri::True) return a;
      Tri b = eval3(e.rhs(), p);
      if (b == Tri::True) return b;
      return (a == Tri::False && b == Tri::False) ? Tri::False : Tri::Unknown;
    }
    case Op::Xor:
    case Op::Eq: {
      Tri a = eval3(e.lhs(), p);
      if (a == Tri::Unknown) return a;
      Tri b = eval3(e.rhs(), p);
      if (b == Tri::Unknown) return b;
      bool same = a == b;
      return (e.op() == Op::Eq) == same ? Tri::True : Tri::False;
    }
  }
  return Tri::Unknown;
}

void search(const Expr& f, Partial& p, unsigned next, unsigned n, std::vector<std::uint64_t>& out,
            bool stop_at_first) {
  Tri v = eval3(f, p);
  if (v == Tri::False) return;
  if (v == Tri::True) {
    // Every completion of the decided prefix is a model.
    const unsigned free = n - next;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << free); ++r) {
      out.push_back(p.bits | (r << next));
      if (stop_at_first) return;
    }
    return;
  }
  // Unknown with all slots decided cannot happen.
  const std::uint64_t bit = std::uint64_t{1} << next;
  p.known |= bit;
  p.bits &= ~bit;
  search(f, p, next + 1, n, out, stop_at_first);
  if (!(stop_at_first && !out.empty())) {
    p.bits |= bit;
    search(f, p, next + 1, n, out, stop_at_first);
  }
  p.known &= ~bit;
  p.bits &= ~bit;
}

}  // namespace

void enumerate_models(const Expr& formula, Valuation g, Valuation l, unsigned slot_count,
                      std::vector<std::uint64_t>& out) {
  if (slot_count > 63) throw PreconditionError("too many unknowns in a model query");
  Partial p{g, l};
  search(formula, p, 0, slot_count, out, false);
}

bool satisfiable(const Expr& formula, Valuation g, Valuation l, unsigned slot_count) {
  if (slot_count > 63) throw PreconditionError("too many unknowns in a model query");
  std::vector<std::uint64_t> out;
  Partial p{g, l};
  search(formula, p, 0, slot_count, out, true);
  return !out.empty();
}

std::vector<Assignment> all_sat(const Expr& e, std::span<const Atom> domain) {
  if (domain.size() > 63) throw PreconditionError("all_sat domain too large");
  Expr f = substitute(e, [&](const Atom& a) {
    auto it = std::find(domain.begin(), domain.end(), a);
    if (it == domain.end()) throw PreconditionError("atom outside the all_sat domain");
    return Expr::slot(static_cast<std::uint32_t>(it - domain.begin()));
  });
  std::vector<std::uint64_t> models;
  enumerate_models(f, {}, {}, static_cast<unsigned>(domain.size()), models);
  std::sort(models.begin(), models.end());
  std::vector<Assignment> out;
  out.reserve(models.size());
  for (std::uint64_t m : models) out.push_back({m, static_cast<std::uint32_t>(domain.size())});
  return out;
}

}  // namespace jitbp
