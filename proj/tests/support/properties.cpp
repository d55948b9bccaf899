#include "properties.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "interpreter.hpp"
#include "jitbp/all_sat.hpp"
#include "jitbp/converter.hpp"
#include "jitbp/errors.hpp"
#include "jitbp/explore.hpp"
#include "jitbp/image_engine.hpp"
#include "jitbp/karp_miller.hpp"
#include "jitbp/stepper.hpp"
#include "jitbp/thread_sets.hpp"
#include "jitbp/thread_system.hpp"
#include "jitbp/translate.hpp"
#include "random_tts.hpp"

namespace testsupport {

using namespace jitbp;

namespace {

std::string show(const std::vector<TtsConfig>& cs) {
  std::string s = "{";
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + to_string(cs[i]);
  return s + "}";
}

std::string show(const ThreadState& t) {
  return "(g=" + std::to_string(t.shared.bits) + ", pc=" + std::to_string(t.local.pc) +
         ", l=" + std::to_string(t.local.locals.bits) + ")";
}

std::vector<TtsConfig> single_configs(const std::vector<TtsState>& ts) {
  std::vector<TtsConfig> out;
  for (const TtsState& s : ts) out.emplace_back(s.g, std::vector<std::uint32_t>{s.l});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Check jit_tts_agreement(const BoolProgram& p, std::size_t max_threads, std::size_t max_configs) {
  Check r;
  const DenseConverter cv(p);
  const ImageEngine engine(p);
  const Translation tr = translate(p, cv);
  const TtsStepper t_post(tr.tts, Direction::Post, tr.sink);
  const TtsStepper t_pre(tr.tts, Direction::Prev, tr.sink);
  const JitStepper j_post(engine, cv, Direction::Post);
  const JitStepper j_pre(engine, cv, Direction::Prev);

  std::vector<TtsState> init;
  for (const ThreadState& s : initial_thread_states(p)) init.push_back(cv.encode_thread(s));
  std::vector<TtsState> fin;
  for (const ThreadState& s : final_thread_states(p)) fin.push_back(cv.encode_thread(s));
  const Target target(single_configs(fin));

  ExploreOptions eo;
  eo.max_threads = max_threads;
  eo.record_visited = true;
  eo.exhaustive = true;
  eo.budget.max_states = max_configs;
  ExploreResult rj, rt;
  try {
    rj = explore(j_post, single_configs(init), target, eo);
    rt = explore(t_post, single_configs(init), target, eo);
  } catch (const BudgetExceeded&) {
    r.skipped = true;
    return r;
  }
  if (rj.visited != rt.visited)
    r.fail("visited sets differ: jit " + std::to_string(rj.visited.size()) + " vs tts " +
           std::to_string(rt.visited.size()));
  if (rj.verdict.outcome != rt.verdict.outcome) r.fail("exhaustive verdicts differ");

  // First-hit runs as well: identical verdicts and identical witnesses.
  eo.exhaustive = false;
  eo.record_visited = false;
  const ExploreResult fj = explore(j_post, single_configs(init), target, eo);
  const ExploreResult ft = explore(t_post, single_configs(init), target, eo);
  if (fj.verdict.outcome != ft.verdict.outcome || fj.verdict.witness != ft.verdict.witness)
    r.fail("first-hit verdicts differ");

  auto compare = [&](const std::vector<TtsConfig>& ws) {
    for (const TtsConfig& w : ws) {
      const auto a = j_post.step(w), b = t_post.step(w);
      if (a != b) r.fail("post of " + to_string(w) + ": jit " + show(a) + " tts " + show(b));
      const auto c = j_pre.step(w), d = t_pre.step(w);
      if (c != d) r.fail("pre of " + to_string(w) + ": jit " + show(c) + " tts " + show(d));
      r.checked += 2;
      if (!r.ok) return;
    }
  };
  compare(rj.visited);

  // Random programs often stall early, so also compare on everything
  // reachable from an arbitrary single thread. Best effort: dropped if it
  // does not fit the budget.
  std::vector<TtsState> every;
  for (const ThreadState& s : all_thread_states(p)) every.push_back(cv.encode_thread(s));
  eo.exhaustive = true;
  eo.record_visited = true;
  try {
    const ExploreResult wide = explore(j_post, single_configs(every), Target(), eo);
    std::vector<TtsConfig> extra;
    std::set_difference(wide.visited.begin(), wide.visited.end(), rj.visited.begin(), rj.visited.end(),
                        std::back_inserter(extra));
    if (r.ok) compare(extra);
  } catch (const BudgetExceeded&) {
  }
  return r;
}

Check sp_wp_adjunction(const BoolProgram& p) {
  Check r;
  const ImageEngine engine(p);
  const std::size_t ng = p.globals().size(), nl = p.locals().size();
  for (Pc pc = 1; pc <= p.pc_max(); ++pc) {
    if (!p.stmt(pc).is_data_step()) continue;
    std::set<std::pair<ThreadState, ThreadState>> sp_pairs, wp_pairs;
    for_each_valuation(ng, [&](Valuation g) {
      for_each_valuation(nl, [&](Valuation l) {
        const ThreadState pre{g, {pc, l}};
        auto sp = engine.sp_stmt(pre);
        std::sort(sp.begin(), sp.end());
        std::vector<ThreadState> oracle;
        for (const DataResult& d : exec_data(p, pc, g, l)) oracle.push_back({d.g, {d.pc, d.l}});
        std::sort(oracle.begin(), oracle.end());
        if (sp != oracle) r.fail("sp at " + show(pre) + " differs from the interpreter");
        for (const ThreadState& post : sp) sp_pairs.insert({pre, post});
        ++r.checked;
      });
    });
    for (Pc q : engine.cfg().succs(pc)) {
      for_each_valuation(ng, [&](Valuation g) {
        for_each_valuation(nl, [&](Valuation l) {
          const ThreadState post{g, {q, l}};
          for (const ThreadState& pre : engine.wp_stmt(pc, post)) {
            if (pre.local.pc != pc) r.fail("wp returned a state at the wrong pc");
            wp_pairs.insert({pre, post});
          }
          ++r.checked;
        });
      });
    }
    if (sp_pairs != wp_pairs) {
      for (const auto& [a, b] : sp_pairs)
        if (!wp_pairs.count({a, b})) r.fail("pc " + std::to_string(pc) + ": " + show(a) + " -> " +
                                            show(b) + " missing from wp");
      for (const auto& [a, b] : wp_pairs)
        if (!sp_pairs.count({a, b})) r.fail("pc " + std::to_string(pc) + ": " + show(a) + " -> " +
                                            show(b) + " missing from sp");
    }
    if (!r.ok) break;
  }
  return r;
}

Check config_duality(const BoolProgram& p, std::size_t max_threads) {
  Check r;
  const ImageEngine engine(p);
  const auto universe = all_configs(p, max_threads + 1);
  std::map<ProgramConfig, std::vector<ProgramConfig>> preds;
  for (const ProgramConfig& c0 : universe) {
    const auto post = engine.post_config(c0);
    if (post != interp_post(p, c0)) r.fail("post of " + to_string(c0, p) + " differs from the interpreter");
    for (const ProgramConfig& c : post) preds[c].push_back(c0);
    ++r.checked;
    if (!r.ok) return r;
  }
  for (const ProgramConfig& c : universe) {
    if (c.size() > max_threads) continue;
    auto expected = preds[c];
    std::sort(expected.begin(), expected.end());
    if (engine.pre_config(c) != expected) {
      r.fail("pre of " + to_string(c, p) + " is not the inverse of post");
      return r;
    }
    ++r.checked;
  }
  return r;
}

namespace {

Expr random_expr_tree(std::mt19937_64& rng, const std::vector<Atom>& atoms, unsigned depth) {
  if (depth == 0 || rng() % 4 == 0) {
    if (rng() % 8 == 0) return Expr::constant(rng() & 1U);
    return Expr::var(atoms[rng() % atoms.size()]);
  }
  switch (rng() % 5) {
    case 0: return Expr::negate(random_expr_tree(rng, atoms, depth - 1));
    case 1: return Expr::binary(Op::And, random_expr_tree(rng, atoms, depth - 1), random_expr_tree(rng, atoms, depth - 1));
    case 2: return Expr::binary(Op::Or, random_expr_tree(rng, atoms, depth - 1), random_expr_tree(rng, atoms, depth - 1));
    case 3: return Expr::binary(Op::Xor, random_expr_tree(rng, atoms, depth - 1), random_expr_tree(rng, atoms, depth - 1));
    default: return Expr::binary(Op::Eq, random_expr_tree(rng, atoms, depth - 1), random_expr_tree(rng, atoms, depth - 1));
  }
}

}  // namespace

Check all_sat_exactness(std::mt19937_64& rng, std::size_t count, unsigned max_vars) {
  Check r;
  const std::vector<Atom> pool{{AtomKind::Global, 0}, {AtomKind::Global, 1}, {AtomKind::Global, 2},
                               {AtomKind::Local, 0},  {AtomKind::Local, 1},  {AtomKind::Choice, 0},
                               {AtomKind::Choice, 1}};
  for (std::size_t i = 0; i < count && r.ok; ++i) {
    std::vector<Atom> domain = pool;
    std::shuffle(domain.begin(), domain.end(), rng);
    domain.resize(1 + rng() % std::min<std::size_t>(max_vars, pool.size()));
    const Expr e = random_expr_tree(rng, domain, 1 + rng() % 4);

    std::vector<Assignment> oracle;
    const std::uint64_t n = std::uint64_t{1} << domain.size();
    for (std::uint64_t bits = 0; bits < n; ++bits) {
      Valuation g, l;
      Assignment c{0, 2};
      for (std::size_t k = 0; k < domain.size(); ++k) {
        const bool v = (bits >> k) & 1U;
        switch (domain[k].kind) {
          case AtomKind::Global: g.set(domain[k].index, v); break;
          case AtomKind::Local: l.set(domain[k].index, v); break;
          default: if (v) c.bits |= std::uint64_t{1} << domain[k].index; break;
        }
      }
      if (eval(e, g, l, c)) oracle.push_back({bits, static_cast<std::uint32_t>(domain.size())});
    }
    const auto got = all_sat(e, domain);
    if (got.size() != oracle.size() ||
        !std::equal(got.begin(), got.end(), oracle.begin(),
                    [](const Assignment& a, const Assignment& b) { return a.bits == b.bits; }))
      r.fail("all_sat differs from the truth table on expression #" + std::to_string(i));
    ++r.checked;
  }
  return r;
}

Check converter_bijection(unsigned max_vars, unsigned max_pc) {
  Check r;
  for (unsigned ng = 0; ng <= max_vars; ++ng) {
    for (unsigned nl = 0; ng + nl <= max_vars; ++nl) {
      for (Pc pc_max = 1; pc_max <= max_pc; ++pc_max) {
        const DenseConverter dense(ng, nl, pc_max);
        const FigureConverter figure(ng, nl, pc_max);
        for (const Converter* cv : {static_cast<const Converter*>(&dense), static_cast<const Converter*>(&figure)}) {
          std::set<std::uint32_t> seen_l;
          for_each_valuation(nl, [&](Valuation l) {
            for (Pc pc = 1; pc <= pc_max; ++pc) {
              const LocalState s{pc, l};
              const std::uint32_t k = cv->encode_local(s);
              if (cv->decode_local(k) != s) r.fail(cv->name() + ": local round trip");
              if (!cv->decodable(k)) r.fail(cv->name() + ": encoded index not decodable");
              if (!seen_l.insert(k).second) r.fail(cv->name() + ": encode_local not injective");
              ++r.checked;
            }
          });
          for (std::uint32_t k = 0; k < cv->local_count(); ++k) {
            const bool image = seen_l.count(k) != 0;
            if (cv->decodable(k) != image) r.fail(cv->name() + ": decodable() wrong at " + std::to_string(k));
            if (!image) {
              bool threw = false;
              try {
                (void)cv->decode_local(k);
              } catch (const DecodeError&) {
                threw = true;
              }
              if (!threw) r.fail(cv->name() + ": unused index decoded");
            }
          }
          if (cv == &dense && seen_l.size() != cv->local_count()) r.fail("dense converter is not onto");
          for_each_valuation(ng, [&](Valuation g) {
            const ThreadState t{g, {pc_max, Valuation{0}}};
            if (cv->decode_thread(cv->encode_thread(t)) != t) r.fail(cv->name() + ": thread round trip");
            if (cv->decode_shared(cv->encode_shared(g)) != g) r.fail(cv->name() + ": shared round trip");
            ++r.checked;
          });
        }
      }
    }
  }
  return r;
}

CoverabilityInstance random_instance(std::mt19937_64& rng) {
  for (;;) {
    CoverabilityInstance inst;
    inst.tts = random_tts(rng);
    const std::uint32_t G = inst.tts.shared_count(), L = inst.tts.local_count();
    const std::uint32_t g0 = static_cast<std::uint32_t>(rng() % G);
    for (unsigned i = 0, k = 1 + rng() % 2; i < k; ++i)
      inst.init.push_back({g0, static_cast<std::uint32_t>(rng() % L)});
    std::vector<std::uint32_t> ls;
    for (unsigned i = 0, k = 1 + rng() % 2; i < k; ++i) ls.push_back(static_cast<std::uint32_t>(rng() % L));
    inst.target = TtsConfig(static_cast<std::uint32_t>(rng() % G), std::move(ls));
    if (InitialSet::single(single_configs(inst.init)).meets(inst.target)) continue;
    if (InitialSet::param(inst.init).meets(inst.target)) continue;
    return inst;
  }
}

Check km_bws_agreement(const CoverabilityInstance& inst, std::mt19937_64& rng,
                       std::size_t km_max_states) {
  Check r;
  const TtsIndex idx(inst.tts);
  const TtsThreadSystem sys(idx);
  const std::uint32_t dim = sys.local_count();

  KmOptions ko;
  ko.budget.max_states = km_max_states;
  ko.budget.timeout_s = 10;
  BwsOptions bo;
  bo.budget.timeout_s = 30;

  // Explicit initial configurations.
  std::vector<std::pair<std::uint32_t, CounterVector>> roots;
  for (const TtsConfig& c : single_configs(inst.init)) roots.emplace_back(c.g(), CounterVector::from_config(c, dim));
  // Any number of threads in the initial locals.
  std::map<std::uint32_t, CounterVector> omega_roots;
  for (const TtsState& s : inst.init) omega_roots.try_emplace(s.g, dim).first->second.set(s.l, OmegaNat::omega());
  std::vector<std::pair<std::uint32_t, CounterVector>> param_roots(omega_roots.begin(), omega_roots.end());

  try {
    const KmResult k1 = km(sys, roots, {inst.target}, ko);
    const KmResult k2 = km(sys, param_roots, {inst.target}, ko);
    const BwsResult b1 = bws(sys, InitialSet::single(single_configs(inst.init)), {inst.target}, bo);
    const BwsResult b2 = bws(sys, InitialSet::param(inst.init), {inst.target}, bo);
    if (k1.verdict.outcome != b1.verdict.outcome)
      r.fail(std::string("single: km ") + to_string(k1.verdict.outcome) + ", bws " + to_string(b1.verdict.outcome));
    if (k2.verdict.outcome != b2.verdict.outcome)
      r.fail(std::string("param: km ") + to_string(k2.verdict.outcome) + ", bws " + to_string(b2.verdict.outcome));
    r.checked += 2;
  } catch (const BudgetExceeded&) {
    r.skipped = true;
  }

  std::vector<TtsConfig> probes{inst.target};
  for (int i = 0; i < 3; ++i) {
    std::vector<std::uint32_t> ls;
    for (unsigned k = 0, n = rng() % 3; k < n; ++k) ls.push_back(static_cast<std::uint32_t>(rng() % dim));
    probes.emplace_back(static_cast<std::uint32_t>(rng() % inst.tts.shared_count()), std::move(ls));
  }
  for (const TtsConfig& w : probes) {
    const auto got = cover_preimage(sys, w);
    const auto want = brute_cover_preimage(idx, w);
    if (got != want) r.fail("cover_preimage of " + to_string(w) + ": got " + show(got) + ", oracle " + show(want));
    ++r.checked;
  }
  return r;
}

}  // namespace testsupport
