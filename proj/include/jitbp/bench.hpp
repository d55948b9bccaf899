#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jitbp/backward.hpp"
#include "jitbp/explore.hpp"

namespace jitbp {

/// CSV layout version, bumped whenever the column list changes.
inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char* kCsvHeader =
    "file,algo,mode,verdict,t_translate_ms,t_explore_ms,states,frontier_peak,mem_bytes,status";

/// Process exit codes of the command line tool.
namespace exit_code {
inline constexpr int kNotFound = 0;
inline constexpr int kInputError = 2;
inline constexpr int kFound = 10;
inline constexpr int kBudget = 20;
}  // namespace exit_code

enum class InputKind : std::uint8_t { Bp, Tts };
enum class Algo : std::uint8_t { Bfs, Ecut, Km, Akm, Bws };
enum class RunMode : std::uint8_t { Tts, Jit };
enum class RunStatus : std::uint8_t { Ok, Timeout, MemoryOut, Error };

const char* to_string(InputKind k);
const char* to_string(Algo a);
const char* to_string(RunMode m);
/// "ok", "TO", "MO", "error".
const char* to_string(RunStatus s);

Algo parse_algo(const std::string& s);
RunMode parse_mode(const std::string& s);
InitMode parse_init_mode(const std::string& s);
/// From the file extension: `.tts` is a system, everything else a program.
InputKind input_kind_of(const std::string& path);

struct RunSpec {
  std::string input;
  InputKind kind = InputKind::Bp;
  Algo algo = Algo::Bfs;
  RunMode mode = RunMode::Jit;
  /// Empty: assertion failures of the program (some thread at a failing
  /// state). Otherwise `g l` for one thread state, or `g:l1,l2,...` for a
  /// configuration; several targets are separated by `;`.
  std::string target;
  /// Initial thread states for `.tts` inputs, same syntax as `target` with
  /// one local each. Empty: `0 0`.
  std::string start;
  InitMode init = InitMode::Single;
  Budget budget;
  std::size_t state_cap = 1'000'000;  // translation limit on thread states
  std::string converter = "dense";
  std::size_t ecut_n_max = 16;
  std::uint64_t seed = 0;
};

/// Budget defaults with JITBP_MAX_STATES / JITBP_TIMEOUT applied.
Budget default_budget();

struct RunReport {
  RunStatus status = RunStatus::Ok;
  std::optional<Outcome> verdict;
  Stats stats;
  double t_translate_ms = 0.0;
  double t_explore_ms = 0.0;
  std::optional<std::size_t> cutoff;  // ecut only
  std::vector<std::size_t> r_sizes;   // ecut only: #R(n) per round
  std::string message;

  int exit_code() const;
};

/// Runs one (input, algorithm, mode) combination. Never throws; failures
/// are reported through status and message.
RunReport run(const RunSpec& spec);

/// Multi-line human readable report.
std::string human_report(const RunSpec& spec, const RunReport& r);
/// Single-line JSON record.
std::string json_report(const RunSpec& spec, const RunReport& r);

/// One CSV row (no trailing newline). With `deterministic`, the two timing
/// columns are written as 0; every other column is reproducible as is.
std::string csv_row(const RunSpec& spec, const RunReport& r, bool deterministic);

struct TranslateSpec {
  std::string input;
  std::string output;  // empty: standard output
  std::string converter = "dense";
  std::size_t state_cap = 1'000'000;
};

/// Writes the up-front translation. Returns an exit code; diagnostics go
/// to `err`.
int cmd_translate(const TranslateSpec& spec, std::ostream& out, std::ostream& err);

struct BenchSpec {
  std::string suite;  // directory of `.bp` files, or a single file
  std::vector<Algo> algos{Algo::Bfs};
  std::vector<RunMode> modes{RunMode::Tts, RunMode::Jit};
  RunSpec base;  // budgets, init mode, converter
  unsigned jobs = 1;
  bool deterministic = false;
};

/// Writes the CSV (header plus one row per file x algorithm x mode, in
/// file-name order). Row failures are recorded, never fatal. Returns an
/// exit code.
int cmd_bench(const BenchSpec& spec, std::ostream& out, std::ostream& err);

struct GenSpec {
  unsigned globals = 4;
  unsigned locals = 1;
  unsigned depth = 8;
  std::uint64_t seed = 1;
  bool spawn = false;  // start one extra thread running the same body
};

/// Program of the scaling family. Throws PreconditionError on invalid
/// parameters.
std::string generate_program(const GenSpec& spec);

}  // namespace jitbp
