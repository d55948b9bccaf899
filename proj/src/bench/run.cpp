#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "jitbp/bench.hpp"
#include "jitbp/converter.hpp"
#include "jitbp/ecut.hpp"
#include "jitbp/errors.hpp"
#include "jitbp/image_engine.hpp"
#include "jitbp/karp_miller.hpp"
#include "jitbp/parser.hpp"
#include "jitbp/stepper.hpp"
#include "jitbp/thread_sets.hpp"
#include "jitbp/thread_system.hpp"
#include "jitbp/translate.hpp"

namespace jitbp {

const char* to_string(InputKind k) { return k == InputKind::Bp ? "bp" : "tts"; }

const char* to_string(Algo a) {
  switch (a) {
    case Algo::Bfs: return "bfs";
    case Algo::Ecut: return "ecut";
    case Algo::Km: return "km";
    case Algo::Akm: return "akm";
    case Algo::Bws: return "bws";
  }
  return "?";
}

const char* to_string(RunMode m) { return m == RunMode::Tts ? "tts" : "jit"; }

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Timeout: return "TO";
    case RunStatus::MemoryOut: return "MO";
    case RunStatus::Error: return "error";
  }
  return "?";
}

Algo parse_algo(const std::string& s) {
  for (Algo a : {Algo::Bfs, Algo::Ecut, Algo::Km, Algo::Akm, Algo::Bws})
    if (s == to_string(a)) return a;
  throw PreconditionError("unknown algorithm '" + s + "'");
}

RunMode parse_mode(const std::string& s) {
  if (s == "tts") return RunMode::Tts;
  if (s == "jit") return RunMode::Jit;
  throw PreconditionError("unknown mode '" + s + "'");
}

InitMode parse_init_mode(const std::string& s) {
  if (s == "single") return InitMode::Single;
  if (s == "param") return InitMode::Param;
  throw PreconditionError("unknown init mode '" + s + "'");
}

InputKind input_kind_of(const std::string& path) {
  const auto dot = path.rfind('.');
  return (dot != std::string::npos && path.substr(dot) == ".tts") ? InputKind::Tts : InputKind::Bp;
}

Budget default_budget() {
  Budget b;
  if (const char* v = std::getenv("JITBP_MAX_STATES"); v && *v) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n == 0) throw PreconditionError("JITBP_MAX_STATES must be a positive integer");
    b.max_states = n;
  }
  if (const char* v = std::getenv("JITBP_TIMEOUT"); v && *v) {
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (*end != '\0' || !(t > 0)) throw PreconditionError("JITBP_TIMEOUT must be a positive number");
    b.timeout_s = t;
  }
  return b;
}

int RunReport::exit_code() const {
  switch (status) {
    case RunStatus::Ok:
      return verdict == Outcome::Found ? exit_code::kFound : exit_code::kNotFound;
    case RunStatus::Timeout:
    case RunStatus::MemoryOut:
      return exit_code::kBudget;
    case RunStatus::Error:
      return exit_code::kInputError;
  }
  return exit_code::kInputError;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint32_t parse_index(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v > 0xffffffffUL)
    throw PreconditionError("bad index '" + s + "' in " + what);
  return static_cast<std::uint32_t>(v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// "g l" or "g:l1,l2,..." items separated by ';'.
std::vector<TtsConfig> parse_configs(const std::string& text, const std::string& what) {
  std::vector<TtsConfig> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    if (const auto colon = item.find(':'); colon != std::string::npos) {
      const std::uint32_t g = parse_index(trim(item.substr(0, colon)), what);
      std::vector<std::uint32_t> ls;
      std::stringstream rest(item.substr(colon + 1));
      std::string l;
      while (std::getline(rest, l, ','))
        if (!trim(l).empty()) ls.push_back(parse_index(trim(l), what));
      out.emplace_back(g, std::move(ls));
    } else {
      std::stringstream ss(item);
      std::string g, l, extra;
      if (!(ss >> g >> l) || (ss >> extra))
        throw PreconditionError("expected 'g l' or 'g:l1,l2' in " + what + ", got '" + item + "'");
      out.emplace_back(parse_index(g, what), std::vector<std::uint32_t>{parse_index(l, what)});
    }
  }
  if (out.empty()) throw PreconditionError("empty " + what);
  return out;
}

void check_bounds(const std::vector<TtsConfig>& cs, std::uint32_t g_count, std::uint32_t l_count,
                  const std::string& what) {
  for (const TtsConfig& c : cs) {
    if (c.g() >= g_count) throw PreconditionError(what + " shared index out of range");
    for (std::uint32_t l : c.locals())
      if (l >= l_count) throw PreconditionError(what + " local index out of range");
  }
}

struct Problem {
  std::vector<TtsState> init_threads;
  std::vector<TtsConfig> targets;
  bool fixed_threads = true;  // no creation or termination
};

std::vector<TtsConfig> single_configs(const std::vector<TtsState>& threads) {
  std::vector<TtsConfig> out;
  for (const TtsState& s : threads) out.emplace_back(s.g, std::vector<std::uint32_t>{s.l});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<std::uint32_t, CounterVector>> km_roots(const Problem& pb, InitMode mode,
                                                             std::uint32_t dim) {
  std::vector<std::pair<std::uint32_t, CounterVector>> roots;
  if (mode == InitMode::Single) {
    for (const TtsConfig& c : single_configs(pb.init_threads))
      roots.emplace_back(c.g(), CounterVector::from_config(c, dim));
    return roots;
  }
  std::map<std::uint32_t, CounterVector> by_g;
  for (const TtsState& s : pb.init_threads) {
    auto it = by_g.try_emplace(s.g, dim).first;
    it->second.set(s.l, OmegaNat::omega());
  }
  for (auto& [g, c] : by_g) roots.emplace_back(g, std::move(c));
  return roots;
}

void run_ecut(const RunSpec& spec, const Stepper& post, const Problem& pb, RunReport& r) {
  std::vector<TtsState> goal;
  for (const TtsConfig& t : pb.targets) {
    if (t.size() != 1) throw PreconditionError("ecut supports thread-state targets only");
    goal.push_back({t.g(), t.locals().front()});
  }
  EcutOptions eo;
  eo.budget = spec.budget;
  eo.n_max = spec.ecut_n_max;
  const EcutReport rep = ecut(post, pb.init_threads, eo);
  r.stats = rep.stats;
  r.cutoff = rep.candidate_cutoff;
  bool hit = false;
  for (const EcutRound& round : rep.rounds) {
    r.r_sizes.push_back(round.thread_states.size());
    for (const TtsState& s : goal)
      hit = hit || std::binary_search(round.thread_states.begin(), round.thread_states.end(), s);
  }
  if (!rep.monotone) {
    r.status = RunStatus::Error;
    r.message = "thread-state sets shrank between rounds";
    return;
  }
  if (hit) {
    r.verdict = Outcome::Found;
  } else if (rep.candidate_cutoff) {
    r.verdict = Outcome::NotFound;
  } else {
    r.status = RunStatus::Timeout;
    r.message = "no plateau up to " + std::to_string(spec.ecut_n_max + 1) + " threads";
  }
}

// Dispatches on the algorithm. `post` builds the forward stepper and `sys`
// the thread view; each is only called when the algorithm needs it.
template <typename MakePost, typename MakeSys>
void run_algo(const RunSpec& spec, const Problem& pb, MakePost&& make_post, MakeSys&& make_sys,
              RunReport& r) {
  switch (spec.algo) {
    case Algo::Bfs: {
      auto post = make_post();
      ExploreOptions eo;
      eo.budget = spec.budget;
      const ExploreResult er = explore(*post, single_configs(pb.init_threads), Target(pb.targets), eo);
      r.verdict = er.verdict.outcome;
      r.stats = er.verdict.stats;
      break;
    }
    case Algo::Ecut: {
      if (!pb.fixed_threads)
        throw PreconditionError("cutoff detection needs a system without thread creation or termination");
      auto post = make_post();
      run_ecut(spec, *post, pb, r);
      break;
    }
    case Algo::Km:
    case Algo::Akm: {
      auto sys = make_sys();
      KmOptions ko;
      ko.budget = spec.budget;
      ko.full = spec.algo == Algo::Akm;
      const KmResult kr = km(*sys, km_roots(pb, spec.init, sys->local_count()), pb.targets, ko);
      r.verdict = kr.verdict.outcome;
      r.stats = kr.verdict.stats;
      break;
    }
    case Algo::Bws: {
      auto sys = make_sys();
      if (pb.targets.empty()) {
        r.verdict = Outcome::NotFound;
        break;
      }
      const InitialSet init = spec.init == InitMode::Single
                                  ? InitialSet::single(single_configs(pb.init_threads))
                                  : InitialSet::param(pb.init_threads);
      BwsOptions bo;
      bo.budget = spec.budget;
      const BwsResult br = bws(*sys, init, pb.targets, bo);
      r.verdict = br.verdict.outcome;
      r.stats = br.verdict.stats;
      break;
    }
  }
}

// Shared tail of both TTS-mode paths.
void run_on_tts(const RunSpec& spec, const Tts& tts, std::optional<std::uint32_t> sink,
                const Problem& pb, RunReport& r) {
  const auto t0 = Clock::now();
  std::unique_ptr<TtsIndex> index;
  run_algo(
      spec, pb, [&] { return std::make_unique<TtsStepper>(tts, Direction::Post, sink); },
      [&] {
        index = std::make_unique<TtsIndex>(tts);
        return std::make_unique<TtsThreadSystem>(*index, sink);
      },
      r);
  r.t_explore_ms = ms_since(t0);
  r.stats.mem_bytes += tts.edges().size() * sizeof(TtsEdge);
}

void run_checked(const RunSpec& spec, RunReport& r) {
  if (spec.kind == InputKind::Tts) {
    if (spec.mode == RunMode::Jit)
      throw PreconditionError("jit mode needs a Boolean program, not a transition system");
    const auto t0 = Clock::now();
    const Tts tts = read_tts_file(spec.input);
    r.t_translate_ms = ms_since(t0);
    Problem pb;
    const auto starts = parse_configs(spec.start.empty() ? "0 0" : spec.start, "start states");
    check_bounds(starts, tts.shared_count(), tts.local_count(), "start state");
    for (const TtsConfig& c : starts) {
      if (c.size() != 1) throw PreconditionError("start states are single thread states");
      pb.init_threads.push_back({c.g(), c.locals().front()});
    }
    if (spec.target.empty()) throw PreconditionError("a transition system input needs --target");
    pb.targets = parse_configs(spec.target, "target");
    check_bounds(pb.targets, tts.shared_count(), tts.local_count(), "target");
    pb.fixed_threads = std::none_of(tts.edges().begin(), tts.edges().end(),
                                    [](const TtsEdge& e) { return e.kind == EdgeKind::Creation; });
    run_on_tts(spec, tts, std::nullopt, pb, r);
    return;
  }

  const bool backward = spec.mode == RunMode::Jit && spec.algo == Algo::Bws;
  const BoolProgram p = parse_file(spec.input, backward ? DirectionMode::Prev : DirectionMode::Post);
  const auto cv = make_converter(spec.converter, p);
  Problem pb;
  for (const ThreadState& s : initial_thread_states(p)) pb.init_threads.push_back(cv->encode_thread(s));
  if (spec.target.empty()) {
    pb.targets = single_configs([&] {
      std::vector<TtsState> fs;
      for (const ThreadState& s : final_thread_states(p)) fs.push_back(cv->encode_thread(s));
      return fs;
    }());
  } else {
    pb.targets = parse_configs(spec.target, "target");
    check_bounds(pb.targets, cv->shared_count(), cv->local_count(), "target");
  }
  pb.fixed_threads = !p.has_kind(StmtKind::StartThread) && !p.has_kind(StmtKind::EndThread);

  if (spec.mode == RunMode::Tts) {
    const auto t0 = Clock::now();
    const Translation tr = translate(p, *cv, spec.state_cap);
    r.t_translate_ms = ms_since(t0);
    run_on_tts(spec, tr.tts, tr.sink, pb, r);
    return;
  }
  const ImageEngine engine(p);
  const auto t0 = Clock::now();
  run_algo(
      spec, pb, [&] { return std::make_unique<JitStepper>(engine, *cv, Direction::Post); },
      [&] { return std::make_unique<JitThreadSystem>(engine, *cv); }, r);
  r.t_explore_ms = ms_since(t0);
}

}  // namespace

RunReport run(const RunSpec& spec) {
  RunReport r;
  try {
    run_checked(spec, r);
  } catch (const BudgetExceeded& e) {
    r.status = e.limit() == BudgetExceeded::Limit::Time ? RunStatus::Timeout : RunStatus::MemoryOut;
    r.verdict.reset();
    r.stats = e.stats();
    r.message = e.what();
  } catch (const CapExceeded& e) {
    r.status = RunStatus::MemoryOut;
    r.verdict.reset();
    r.message = e.what();
  } catch (const std::exception& e) {
    r.status = RunStatus::Error;
    r.verdict.reset();
    r.message = e.what();
  }
  return r;
}

namespace {

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

const char* verdict_text(const RunReport& r) { return r.verdict ? to_string(*r.verdict) : ""; }

}  // namespace

std::string human_report(const RunSpec& spec, const RunReport& r) {
  std::ostringstream os;
  os << "input:          " << spec.input << " (" << to_string(spec.kind) << ")\n"
     << "algorithm:      " << to_string(spec.algo) << ", " << to_string(spec.mode) << " mode\n"
     << "verdict:        " << (r.verdict ? to_string(*r.verdict) : "-") << "\n"
     << "status:         " << to_string(r.status) << "\n"
     << "expanded:       " << r.stats.expanded << "\n"
     << "stored:         " << r.stats.stored << "\n"
     << "frontier peak:  " << r.stats.frontier_peak << "\n"
     << "memory (est.):  " << r.stats.mem_bytes << " bytes\n"
     << "translate:      " << fixed3(r.t_translate_ms) << " ms\n"
     << "explore:        " << fixed3(r.t_explore_ms) << " ms\n"
     << "total:          " << fixed3(r.t_translate_ms + r.t_explore_ms) << " ms\n";
  if (spec.algo == Algo::Ecut) {
    os << "candidate cutoff: " << (r.cutoff ? std::to_string(*r.cutoff) : "none") << "\n#R(n):          ";
    for (std::size_t i = 0; i < r.r_sizes.size(); ++i) os << (i ? " " : "") << r.r_sizes[i];
    os << "\n";
  }
  if (!r.message.empty()) os << "message:        " << r.message << "\n";
  return os.str();
}

std::string json_report(const RunSpec& spec, const RunReport& r) {
  nlohmann::ordered_json j;
  j["file"] = spec.input;
  j["algo"] = to_string(spec.algo);
  j["mode"] = to_string(spec.mode);
  j["verdict"] = r.verdict ? nlohmann::ordered_json(to_string(*r.verdict)) : nlohmann::ordered_json();
  j["status"] = to_string(r.status);
  j["exit_code"] = r.exit_code();
  j["t_translate_ms"] = r.t_translate_ms;
  j["t_explore_ms"] = r.t_explore_ms;
  j["t_total_ms"] = r.t_translate_ms + r.t_explore_ms;
  j["states"] = r.stats.expanded;
  j["stored"] = r.stats.stored;
  j["frontier_peak"] = r.stats.frontier_peak;
  j["mem_bytes"] = r.stats.mem_bytes;
  if (spec.algo == Algo::Ecut) {
    j["cutoff"] = r.cutoff ? nlohmann::ordered_json(*r.cutoff) : nlohmann::ordered_json();
    j["r_sizes"] = r.r_sizes;
  }
  if (!r.message.empty()) j["message"] = r.message;
  return j.dump();
}

std::string csv_row(const RunSpec& spec, const RunReport& r, bool deterministic) {
  std::string file = spec.input;
  if (file.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : file) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    file = q + "\"";
  }
  std::ostringstream os;
  os << file << ',' << to_string(spec.algo) << ',' << to_string(spec.mode) << ',' << verdict_text(r)
     << ',' << (deterministic ? "0" : fixed3(r.t_translate_ms)) << ','
     << (deterministic ? "0" : fixed3(r.t_explore_ms)) << ',' << r.stats.expanded << ','
     << r.stats.frontier_peak << ',' << r.stats.mem_bytes << ',' << to_string(r.status);
  return os.str();
}

}  // namespace jitbp
