// Command line driver: check, translate, bench, gen.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jitbp/bench.hpp"
#include "jitbp/errors.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

struct BudgetFlags {
  std::optional<std::size_t> max_states;
  std::optional<double> timeout;

  void add(CLI::App* cmd) {
    cmd->add_option("--max-states", max_states, "Stored-state budget (env JITBP_MAX_STATES)");
    cmd->add_option("--timeout", timeout, "Wall-time budget in seconds (env JITBP_TIMEOUT)");
  }
  jitbp::Budget resolve() const {
    jitbp::Budget b = jitbp::default_budget();
    if (max_states) b.max_states = *max_states;
    if (timeout) b.timeout_s = *timeout;
    return b;
  }
};

}  // namespace

int main(int argc, char** argv) {
  using namespace jitbp;
  CLI::App app{"Reachability and coverability checking of multi-threaded Boolean programs"};
  app.set_version_flag("--version", std::string(kVersion) + " (csv schema " +
                                        std::to_string(kCsvSchemaVersion) + ")");
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Run one algorithm on one input");
  std::string input, algo = "bfs", mode = "jit", init = "single", converter = "dense";
  std::string target, start;
  std::size_t state_cap = 1'000'000, n_max = 16;
  std::uint64_t seed = 0;
  bool json_only = false;
  BudgetFlags check_budget;
  check->add_option("input", input, "Program (.bp) or transition system (.tts)")->required();
  check->add_option("--algo", algo, "bfs, ecut, km, akm or bws")->capture_default_str();
  check->add_option("--mode", mode, "tts (translate first) or jit")->capture_default_str();
  check->add_option("--target", target, "'g l' or 'g:l1,l2', ';'-separated; default: assertion failures");
  check->add_option("--start", start, "Initial thread states of a .tts input; default '0 0'");
  check->add_option("--init", init, "single or param (km, akm, bws)")->capture_default_str();
  check->add_option("--converter", converter, "dense or figure")->capture_default_str();
  check->add_option("--state-cap", state_cap, "Thread-state limit of the translation")->capture_default_str();
  check->add_option("--n-max", n_max, "Largest thread count tried by ecut")->capture_default_str();
  check->add_option("--seed", seed, "Recorded seed (runs are deterministic)");
  check->add_flag("--json", json_only, "Print only the JSON record");
  check_budget.add(check);

  // translate
  auto* tr = app.add_subcommand("translate", "Translate a program into a transition system");
  TranslateSpec ts;
  tr->add_option("input", ts.input, "Program (.bp)")->required();
  tr->add_option("--out,-o", ts.output, "Output file; default standard output");
  tr->add_option("--converter", ts.converter, "dense or figure")->capture_default_str();
  tr->add_option("--state-cap", ts.state_cap, "Thread-state limit")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Run a suite in both modes and write CSV");
  std::string suite, out_path;
  std::vector<std::string> algos{"bfs"}, modes{"tts", "jit"};
  unsigned jobs = 1;
  bool deterministic = false;
  std::string bench_init = "single", bench_conv = "dense";
  BudgetFlags bench_budget;
  bench->add_option("suite", suite, "Directory of .bp files, or one file")->required();
  bench->add_option("--algo", algos, "Algorithms")->delimiter(',')->capture_default_str();
  bench->add_option("--mode", modes, "Modes")->delimiter(',')->capture_default_str();
  bench->add_option("--init", bench_init, "single or param")->capture_default_str();
  bench->add_option("--converter", bench_conv, "dense or figure")->capture_default_str();
  bench->add_option("--state-cap", state_cap, "Thread-state limit of the translation")->capture_default_str();
  bench->add_option("--out,-o", out_path, "CSV file; default standard output");
  bench->add_option("--jobs,-j", jobs, "Rows run concurrently")->capture_default_str();
  bench->add_option("--seed", seed, "Recorded seed (runs are deterministic)");
  bench->add_flag("--deterministic", deterministic, "Write 0 for timing columns");
  bench_budget.add(bench);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a member of the scaling family");
  GenSpec gs;
  std::string gen_out;
  gen->add_option("--globals,-k", gs.globals, "Global variables")->capture_default_str();
  gen->add_option("--locals", gs.locals, "Local variables")->capture_default_str();
  gen->add_option("--depth", gs.depth, "Assignment statements")->capture_default_str();
  gen->add_option("--seed", gs.seed, "Random seed")->capture_default_str();
  gen->add_flag("--spawn", gs.spawn, "Start a second thread");
  gen->add_option("--out,-o", gen_out, "Output file; default standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::kInputError;
  }

  try {
    if (*check) {
      RunSpec spec;
      spec.input = input;
      spec.kind = input_kind_of(input);
      spec.algo = parse_algo(algo);
      spec.mode = parse_mode(mode);
      spec.init = parse_init_mode(init);
      spec.target = target;
      spec.start = start;
      spec.converter = converter;
      spec.state_cap = state_cap;
      spec.ecut_n_max = n_max;
      spec.seed = seed;
      spec.budget = check_budget.resolve();
      const RunReport r = run(spec);
      if (!json_only) std::cout << human_report(spec, r);
      std::cout << json_report(spec, r) << "\n";
      if (r.status == RunStatus::Error) std::cerr << "error: " << r.message << "\n";
      return r.exit_code();
    }
    if (*tr) return cmd_translate(ts, std::cout, std::cerr);
    if (*bench) {
      BenchSpec bs;
      bs.suite = suite;
      bs.algos.clear();
      for (const auto& a : algos) bs.algos.push_back(parse_algo(a));
      bs.modes.clear();
      for (const auto& m : modes) bs.modes.push_back(parse_mode(m));
      bs.base.init = parse_init_mode(bench_init);
      bs.base.converter = bench_conv;
      bs.base.state_cap = state_cap;
      bs.base.seed = seed;
      bs.base.budget = bench_budget.resolve();
      bs.jobs = jobs;
      bs.deterministic = deterministic;
      if (out_path.empty()) return cmd_bench(bs, std::cout, std::cerr);
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw PreconditionError("cannot write " + out_path);
      return cmd_bench(bs, f, std::cerr);
    }
    if (*gen) {
      const std::string text = generate_program(gs);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(gen_out, std::ios::binary);
        if (!(f << text)) throw PreconditionError("cannot write " + gen_out);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
  return exit_code::kInputError;
}
