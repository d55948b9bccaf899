#include "jitbp/expr.hpp"

#include <algorithm>

namespace jitbp {

Expr Expr::constant(bool value) {
  static const Expr kFalse(std::make_shared<const Node>(Node{Op::Const, false, {}, {}}));
  static const Expr kTrue(std::make_shared<const Node>(Node{Op::Const, true, {}, {}}));
  return value ? kTrue : kFalse;
}

Expr Expr::var(Atom atom) {
  return Expr(std::make_shared<const Node>(Node{Op::Var, false, atom, {}}));
}

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(Node{Op::Not, false, {}, {std::move(operand)}}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  return Expr(
      std::make_shared<const Node>(Node{op, false, {}, {std::move(lhs), std::move(rhs)}}));
}

bool Expr::is_binary() const noexcept {
  return op() == Op::And || op() == Op::Or || op() == Op::Xor || op() == Op::Eq;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Const:
      return a.value() == b.value();
    case Op::Var:
      return a.atom() == b.atom();
    case Op::Not:
      return a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

void collect(const Expr& e, std::vector<Atom>& out) {
  switch (e.op()) {
    case Op::Const:
      return;
    case Op::Var:
      if (std::find(out.begin(), out.end(), e.atom()) == out.end()) out.push_back(e.atom());
      return;
    case Op::Not:
      collect(e.operand(), out);
      return;
    default:
      collect(e.lhs(), out);
      collect(e.rhs(), out);
  }
}

const char* op_token(Op op) {
  switch (op) {
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Xor: return "^";
    case Op::Eq: return "==";
    default: return "?";
  }
}

void render(const Expr& e, const std::vector<std::string>& globals,
            const std::vector<std::string>& locals, std::string& out) {
  switch (e.op()) {
    case Op::Const:
      out += e.value() ? '1' : '0';
      return;
    case Op::Var: {
      const Atom& a = e.atom();
      switch (a.kind) {
        case AtomKind::Global:
          out += a.index < globals.size() ? globals[a.index] : "g" + std::to_string(a.index);
          break;
        case AtomKind::Local:
          out += a.index < locals.size() ? locals[a.index] : "l" + std::to_string(a.index);
          break;
        case AtomKind::Choice:
          out += '*';
          break;
        case AtomKind::Slot:
          out += "$" + std::to_string(a.index);
          break;
      }
      return;
    }
    case Op::Not:
      out += '!';
      render(e.operand(), globals, locals, out);
      return;
    default:
      out += '(';
      render(e.lhs(), globals, locals, out);
      out += ' ';
      out += op_token(e.op());
      out += ' ';
      render(e.rhs(), globals, locals, out);
      out += ')';
  }
}

}  // namespace

std::vector<Atom> atoms_of(const Expr& e) {
  std::vector<Atom> out;
  collect(e, out);
  return out;
}

std::uint32_t choice_count(const Expr& e) {
  std::uint32_t n = 0;
  for (const Atom& a : atoms_of(e))
    if (a.kind == AtomKind::Choice) n = std::max(n, a.index + 1);
  return n;
}

std::string to_string(const Expr& e, const std::vector<std::string>& globals,
                      const std::vector<std::string>& locals) {
  std::string out;
  render(e, globals, locals, out);
  return out;
}

}  // namespace jitbp
