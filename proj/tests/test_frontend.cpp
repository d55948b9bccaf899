#include <doctest.h>

#include <random>

#include "jitbp/cfg.hpp"
#include "jitbp/errors.hpp"
#include "jitbp/image_engine.hpp"
#include "jitbp/parser.hpp"
#include "jitbp/thread_sets.hpp"
#include "support/random_program.hpp"

using namespace jitbp;

namespace {

const std::string kFixtures = JITBP_FIXTURE_DIR;

BoolProgram fig2() { return parse_file(kFixtures + "/fig2.bp", DirectionMode::Both); }

// Returns the error text, or "" if parsing succeeded.
std::string parse_error(const std::string& text) {
  try {
    parse(text, DirectionMode::Both, "t.bp");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse: fixture with two globals, one local and nine locations") {
  const BoolProgram p = fig2();
  CHECK(p.globals().size() == 2);
  CHECK(p.locals().size() == 1);
  CHECK(p.pc_max() == 9);
  CHECK(p.stmt(1).kind() == StmtKind::StartThread);
  CHECK(p.stmt(1).as<StartThreadStmt>().target == 3);
  CHECK(p.stmt(9).kind() == StmtKind::Assert);
}

TEST_CASE("parse: smallest program") {
  const BoolProgram p = parse("decl g; void main() begin decl l; 1: skip; end", DirectionMode::Post);
  CHECK(p.pc_max() == 1);
  CHECK(p.stmt(1).kind() == StmtKind::Skip);
  CHECK(p.mode() == DirectionMode::Post);
}

TEST_CASE("parse: diagnostics") {
  const std::string head = "decl g; void main() begin decl l; ";
  CHECK(parse_error(head + "1: goto 99; 2: skip; 3: skip; 4: skip; 5: skip; end").find("99") != std::string::npos);
  CHECK(parse_error(head + "1: x := 1; end").find("undeclared") != std::string::npos);
  CHECK(parse_error(head + "1: foo(); end").find("call") != std::string::npos);
  CHECK(parse_error(head + "1: return; end").find("return") != std::string::npos);
  CHECK(parse_error(head + "1: g, l := 1; end").find("values") != std::string::npos);
  CHECK(parse_error(head + "1: g, g := 1, 0; end") != "");
  CHECK(parse_error(head + "1: atomic { atomic { skip; }; }; end").find("atomic") != std::string::npos);
  CHECK(parse_error(head + "1: atomic { wait; }; end") != "");
  CHECK(parse_error("decl g, g; void main() begin 1: skip; end") != "");
  CHECK(parse_error(head + "1: g := 2; end") != "");
  // The lexer reports the position of the offending character.
  CHECK(parse_error("decl g;\nvoid main() begin\n 1: g := $; end").rfind("t.bp:3:", 0) == 0);
  // start_thread may not be the last statement of a function.
  CHECK(parse_error(head + "1: start_thread 1; end") != "");
  CHECK(parse_error(head + "2: skip; end") != "");  // numeric label must equal its pc
}

TEST_CASE("parse: symbolic labels and comments") {
  const BoolProgram p = parse(R"(
    // comment
    decl g;
    void main() begin
      top: g := !g;
      goto top, done;
      done: assert(g);
    end)",
                              DirectionMode::Both);
  REQUIRE(p.pc_max() == 3);
  CHECK(p.stmt(2).as<GotoStmt>().targets == std::vector<Pc>{1, 3});
}

TEST_CASE("parse: functions are flattened and locals merged") {
  const BoolProgram p = parse(R"(
    decl g;
    void main() begin decl a; 1: start_thread 3; 2: skip; end
    void worker() begin decl b; 3: b := g; end)",
                              DirectionMode::Both);
  CHECK(p.pc_max() == 3);
  CHECK(p.locals() == std::vector<std::string>{"a", "b"});
  CHECK(p.functions().size() == 2);
  CHECK(p.function_of(3).name == "worker");
  CHECK(p.next_pc(2) == kExitPc);
  CHECK(p.next_pc(1) == 2);
}

TEST_CASE("build_cfg examples") {
  SUBCASE("skip falls through") {
    const BoolProgram p = parse("decl g; void main() begin 1: skip; 2: skip; end", DirectionMode::Both);
    const Cfg cfg = build_cfg(p);
    CHECK(cfg.preds(2) == std::vector<CfgEdge>{{1, CfgTag::Flow}});
  }
  SUBCASE("duplicate goto labels give one edge") {
    const BoolProgram p = parse("decl g; void main() begin 1: goto 2, 2; 2: skip; end", DirectionMode::Both);
    CHECK(build_cfg(p).preds(2) == std::vector<CfgEdge>{{1, CfgTag::Flow}});
  }
  SUBCASE("goto to two labels") {
    const BoolProgram p = parse(
        "decl g; void main() begin 1: skip; 2: skip; 3: goto 5, 7; 4: skip; 5: skip; 6: skip; 7: skip; end",
        DirectionMode::Both);
    const Cfg cfg = build_cfg(p);
    CHECK(std::count(cfg.preds(5).begin(), cfg.preds(5).end(), CfgEdge{3, CfgTag::Flow}) == 1);
    CHECK(std::count(cfg.preds(7).begin(), cfg.preds(7).end(), CfgEdge{3, CfgTag::Flow}) == 1);
    CHECK(std::count(cfg.preds(4).begin(), cfg.preds(4).end(), CfgEdge{3, CfgTag::Flow}) == 0);
  }
  SUBCASE("start_thread adds a spawn edge") {
    const BoolProgram p = parse("decl g; void main() begin 1: start_thread 3; 2: skip; 3: skip; end",
                                DirectionMode::Both);
    const Cfg cfg = build_cfg(p);
    CHECK(cfg.preds(2) == std::vector<CfgEdge>{{1, CfgTag::Flow}});
    CHECK(cfg.preds(3) == std::vector<CfgEdge>{{1, CfgTag::Spawn}, {2, CfgTag::Flow}});
  }
}

TEST_CASE("initial_thread_states") {
  SUBCASE("no constraint enumerates everything") {
    const BoolProgram p = parse("decl g; void main() begin 1: skip; end", DirectionMode::Both);
    const auto init = initial_thread_states(p);
    REQUIRE(init.size() == 2);
    CHECK(init[0] == ThreadState{Valuation{0}, {1, Valuation{0}}});
    CHECK(init[1] == ThreadState{Valuation{1}, {1, Valuation{0}}});
  }
  SUBCASE("constraint filters") {
    const BoolProgram p =
        parse("decl g1, g2; init !g1 && !g2; void main() begin decl l; 1: skip; end", DirectionMode::Both);
    CHECK(initial_thread_states(p).size() == 2);
  }
  SUBCASE("fixture has four") { CHECK(initial_thread_states(fig2()).size() == 4); }
}

TEST_CASE("final_thread_states") {
  SUBCASE("fixture: pc 9 with g2 = l = 1") {
    const auto fin = final_thread_states(fig2());
    REQUIRE(fin.size() == 2);
    for (const ThreadState& s : fin) {
      CHECK(s.local.pc == 9);
      CHECK(s.shared[1]);
      CHECK(s.local.locals[0]);
    }
    CHECK(fin[0].shared[0] != fin[1].shared[0]);
  }
  SUBCASE("assert(1) contributes nothing") {
    const BoolProgram p = parse("decl g; void main() begin 1: assert(1); end", DirectionMode::Both);
    CHECK(final_thread_states(p).empty());
  }
  SUBCASE("no asserts") {
    const BoolProgram p = parse("decl g; void main() begin 1: skip; end", DirectionMode::Both);
    CHECK(final_thread_states(p).empty());
  }
  SUBCASE("a choice counts when some resolution falsifies the assertion") {
    const BoolProgram p = parse("decl g; void main() begin 1: assert(g || *); end", DirectionMode::Both);
    const auto fin = final_thread_states(p);
    REQUIRE(fin.size() == 1);
    CHECK(fin[0].shared == Valuation{0});
  }
  SUBCASE("pure functions") {
    const BoolProgram p = fig2();
    CHECK(final_thread_states(p) == final_thread_states(p));
    CHECK(initial_thread_states(p) == initial_thread_states(p));
  }
}

TEST_CASE("property: print and re-parse give the same program") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const std::string text = testsupport::random_program(rng);
    const BoolProgram p = parse(text, DirectionMode::Both);
    const std::string printed = print(p);
    const BoolProgram q = parse(printed, DirectionMode::Both);
    INFO(text);
    INFO(printed);
    REQUIRE(p.same_structure(q));
    REQUIRE(print(q) == printed);
  }
}

TEST_CASE("property: every pc has exactly one statement") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const BoolProgram p = parse(testsupport::random_program(rng), DirectionMode::Both);
    CHECK(p.stmts().size() == p.pc_max());
    for (Pc pc = 1; pc <= p.pc_max(); ++pc) CHECK_NOTHROW((void)p.stmt(pc));
  }
}

TEST_CASE("property: data steps only follow control-flow edges") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const BoolProgram p = parse(testsupport::random_program(rng), DirectionMode::Both);
    const ImageEngine engine(p);
    const Cfg cfg = build_cfg(p);
    for (Pc pc = 1; pc <= p.pc_max(); ++pc) {
      if (!p.stmt(pc).is_data_step()) continue;
      for_each_valuation(p.globals().size(), [&](Valuation g) {
        for_each_valuation(p.locals().size(), [&](Valuation l) {
          for (const ThreadState& s : engine.sp_stmt({g, {pc, l}})) {
            const auto& preds = cfg.preds(s.local.pc);
            CHECK(std::find(preds.begin(), preds.end(), CfgEdge{pc, CfgTag::Flow}) != preds.end());
          }
        });
      });
    }
  }
}
