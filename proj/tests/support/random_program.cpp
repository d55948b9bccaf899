#include "random_program.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace testsupport {

namespace {

unsigned below(std::mt19937_64& rng, unsigned n) { return n == 0 ? 0 : static_cast<unsigned>(rng() % n); }
bool coin(std::mt19937_64& rng, unsigned percent) { return below(rng, 100) < percent; }

std::string var_name(unsigned ng, unsigned k) {
  return k < ng ? "g" + std::to_string(k) : "l" + std::to_string(k - ng);
}

struct Gen {
  std::mt19937_64& rng;
  const ProgramShape& shape;
  unsigned ng = 0;
  unsigned nl = 0;
  unsigned pc_max = 0;

  std::string expr(unsigned depth, bool choices) { return random_expr(rng, ng, nl, depth, choices); }

  std::string targets_of(unsigned first, unsigned last) {
    std::ostringstream os;
    const unsigned n = 1 + below(rng, 2);
    for (unsigned i = 0; i < n; ++i) os << (i ? ", " : "") << first + below(rng, last - first + 1);
    return os.str();
  }

  std::string assign() {
    const unsigned vars = ng + nl;
    std::vector<unsigned> pool(vars);
    for (unsigned i = 0; i < vars; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    const unsigned n = std::min(vars, 1 + below(rng, 2));
    std::ostringstream os;
    for (unsigned i = 0; i < n; ++i) os << (i ? ", " : "") << var_name(ng, pool[i]);
    os << " := ";
    for (unsigned i = 0; i < n; ++i) os << (i ? ", " : "") << expr(2, shape.choices);
    if (coin(rng, 20)) os << " constrain " << expr(1, shape.choices);
    return os.str();
  }

  std::string seq(unsigned first, unsigned last, bool in_atomic) {
    switch (below(rng, in_atomic ? 9 : 10)) {
      case 0: return "skip";
      case 1:
      case 2: return "assume(" + expr(2, shape.choices) + ")";
      case 3: return "assert(" + expr(2, shape.choices) + ")";
      case 4:
        if (!in_atomic || coin(rng, 30)) return "goto " + targets_of(first, last);
        return "skip";
      default: return assign();
    }
  }

  std::string atomic(unsigned first, unsigned last) {
    std::ostringstream os;
    os << "atomic { ";
    const unsigned n = 1 + below(rng, 3);
    for (unsigned i = 0; i < n; ++i) os << seq(first, last, true) << "; ";
    os << "}";
    return os.str();
  }

  std::string stmt(unsigned pc, unsigned first, unsigned last) {
    const bool at_end = pc == last;
    std::vector<int> kinds{0, 0, 0, 0, 0};  // sequential, weighted
    if (shape.atomic) kinds.push_back(1);
    if (shape.threads) {
      kinds.push_back(3);
      if (!at_end) kinds.push_back(2);
    }
    if (shape.sync && !at_end) {
      kinds.push_back(4);
      kinds.push_back(4);
      kinds.push_back(5);
      kinds.push_back(6);
    }
    switch (kinds[below(rng, static_cast<unsigned>(kinds.size()))]) {
      case 1: return atomic(first, last);
      case 2: return "start_thread " + std::to_string(1 + below(rng, pc_max));
      case 3: return "end_thread";
      case 4: return "wait";
      case 5: return "signal";
      case 6: return "broadcast";
      default: return seq(first, last, false);
    }
  }
};

}  // namespace

std::string random_expr(std::mt19937_64& rng, unsigned ng, unsigned nl, unsigned depth,
                        bool choices) {
  const unsigned vars = ng + nl;
  if (depth == 0 || coin(rng, 35)) {
    const unsigned r = below(rng, 10);
    if (r == 0) return coin(rng, 50) ? "1" : "0";
    if (r == 1 && choices) return "*";
    if (vars == 0) return "1";
    return var_name(ng, below(rng, vars));
  }
  static const char* const kOps[] = {" && ", " || ", " ^ ", " == ", " != "};
  if (coin(rng, 25)) return "!" + random_expr(rng, ng, nl, depth - 1, choices);
  return "(" + random_expr(rng, ng, nl, depth - 1, choices) + kOps[below(rng, 5)] +
         random_expr(rng, ng, nl, depth - 1, choices) + ")";
}

std::string random_program(std::mt19937_64& rng, const ProgramShape& shape) {
  Gen gen{rng, shape};
  do {
    gen.ng = below(rng, shape.max_globals + 1);
    gen.nl = below(rng, shape.max_locals + 1);
  } while (gen.ng + gen.nl == 0 || gen.ng + gen.nl > shape.max_vars);
  gen.pc_max = shape.min_pcs + below(rng, shape.max_pcs - shape.min_pcs + 1);

  // One or two functions; the second one has no locals of its own.
  unsigned split = gen.pc_max;
  if (gen.pc_max >= 4 && coin(rng, 30)) split = 2 + below(rng, gen.pc_max - 3);

  std::ostringstream os;
  if (gen.ng) {
    os << "decl ";
    for (unsigned i = 0; i < gen.ng; ++i) os << (i ? ", " : "") << "g" << i;
    os << ";\n";
  }
  if (shape.init && coin(rng, 60)) os << "init " << gen.expr(2, false) << ";\n";

  os << "void main() begin\n";
  if (gen.nl) {
    os << "  decl ";
    for (unsigned i = 0; i < gen.nl; ++i) os << (i ? ", " : "") << "l" << i;
    os << ";\n";
  }
  for (unsigned pc = 1; pc <= split; ++pc) os << "  " << pc << ": " << gen.stmt(pc, 1, split) << ";\n";
  os << "end\n";
  if (split < gen.pc_max) {
    // Locals of main are not visible here; only use globals.
    const unsigned saved = gen.nl;
    gen.nl = 0;
    if (gen.ng == 0) {
      // Nothing to read: keep the helper to control flow only.
      os << "void helper() begin\n";
      for (unsigned pc = split + 1; pc <= gen.pc_max; ++pc)
        os << "  " << pc << ": " << (pc == gen.pc_max ? "end_thread" : "skip") << ";\n";
    } else {
      os << "void helper() begin\n";
      for (unsigned pc = split + 1; pc <= gen.pc_max; ++pc)
        os << "  " << pc << ": " << gen.stmt(pc, split + 1, gen.pc_max) << ";\n";
    }
    os << "end\n";
    gen.nl = saved;
  }
  return os.str();
}

}  // namespace testsupport
