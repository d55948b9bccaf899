#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace jitbp {

/// What a leaf variable of an expression refers to. Program expressions only
/// use Global, Local and Choice; Slot leaves appear in compiled relations and
/// in all-SAT queries, where they stand for the unknowns being enumerated.
enum class AtomKind : std::uint8_t { Global, Local, Choice, Slot };

struct Atom {
  AtomKind kind = AtomKind::Global;
  std::uint32_t index = 0;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class Op : std::uint8_t { Const, Var, Not, And, Or, Xor, Eq };

/// Immutable Boolean expression tree. Subtrees are shared, so copies are
/// cheap and an Expr can be handed between threads freely.
class Expr {
 public:
  Expr() : Expr(constant(false)) {}

  static Expr constant(bool value);
  static Expr var(Atom atom);
  static Expr global(std::uint32_t index) { return var({AtomKind::Global, index}); }
  static Expr local(std::uint32_t index) { return var({AtomKind::Local, index}); }
  static Expr choice(std::uint32_t index) { return var({AtomKind::Choice, index}); }
  static Expr slot(std::uint32_t index) { return var({AtomKind::Slot, index}); }
  static Expr negate(Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  Op op() const noexcept { return node_->op; }
  bool value() const noexcept { return node_->value; }
  const Atom& atom() const noexcept { return node_->atom; }
  const Expr& operand() const noexcept { return node_->kids[0]; }
  const Expr& lhs() const noexcept { return node_->kids[0]; }
  const Expr& rhs() const noexcept { return node_->kids[1]; }

  bool is_binary() const noexcept;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Op op = Op::Const;
    bool value = false;
    Atom atom{};
    std::vector<Expr> kids;
  };
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Applies `fn` to every leaf atom and rebuilds the tree from the returned
/// expressions.
template <typename Fn>
Expr substitute(const Expr& e, Fn&& fn) {
  switch (e.op()) {
    case Op::Const:
      return e;
    case Op::Var:
      return fn(e.atom());
    case Op::Not:
      return Expr::negate(substitute(e.operand(), fn));
    default:
      return Expr::binary(e.op(), substitute(e.lhs(), fn), substitute(e.rhs(), fn));
  }
}

/// Collects the distinct atoms of `e` in first-occurrence order.
std::vector<Atom> atoms_of(const Expr& e);

/// Highest Choice index + 1 occurring in `e` (0 if none).
std::uint32_t choice_count(const Expr& e);

/// Renders with program-level names; `*` for choices, `$k` for slots.
std::string to_string(const Expr& e, const std::vector<std::string>& globals,
                      const std::vector<std::string>& locals);

}  // namespace jitbp
