#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "jitbp/bench.hpp"
#include "jitbp/converter.hpp"
#include "jitbp/errors.hpp"
#include "jitbp/parser.hpp"
#include "jitbp/translate.hpp"

namespace jitbp {

int cmd_translate(const TranslateSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    const BoolProgram p = parse_file(spec.input, DirectionMode::Post);
    const auto cv = make_converter(spec.converter, p);
    const Translation tr = translate(p, *cv, spec.state_cap);
    const std::string text = emit_tts(tr.tts);
    if (spec.output.empty()) {
      out << text;
    } else {
      std::ofstream f(spec.output, std::ios::binary);
      if (!f) throw PreconditionError("cannot write " + spec.output);
      f << text;
      if (!f.flush()) throw PreconditionError("cannot write " + spec.output);
    }
    return exit_code::kNotFound;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
}

int cmd_bench(const BenchSpec& spec, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  std::error_code ec;
  if (fs::is_directory(spec.suite, ec)) {
    for (const auto& entry : fs::directory_iterator(spec.suite, ec))
      if (entry.is_regular_file() && entry.path().extension() == ".bp")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(spec.suite, ec)) {
    files.push_back(spec.suite);
  }
  if (files.empty()) {
    err << "error: no .bp files in " << spec.suite << "\n";
    return exit_code::kInputError;
  }

  std::vector<RunSpec> rows;
  for (const std::string& f : files)
    for (Algo a : spec.algos)
      for (RunMode m : spec.modes) {
        RunSpec r = spec.base;
        r.input = f;
        r.kind = InputKind::Bp;
        r.algo = a;
        r.mode = m;
        rows.push_back(std::move(r));
      }

  std::vector<std::string> lines(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();)
      lines[i] = csv_row(rows[i], run(rows[i]), spec.deterministic);
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(spec.jobs, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out << kCsvHeader << "\n";
  for (const std::string& l : lines) out << l << "\n";
  return 0;
}

namespace {

std::string var(char kind, unsigned i) { return std::string(1, kind) + std::to_string(i); }

}  // namespace

std::string generate_program(const GenSpec& spec) {
  if (spec.globals < 1 || spec.globals > 30) throw PreconditionError("globals must be in 1..30");
  if (spec.locals > 8) throw PreconditionError("locals must be in 0..8");
  if (spec.depth < 1 || spec.depth > 10000) throw PreconditionError("depth must be in 1..10000");

  std::mt19937_64 rng(spec.seed);
  auto pick = [&](unsigned n) { return static_cast<unsigned>(rng() % n); };
  // Random operand: a global or local, possibly negated.
  auto operand = [&] {
    const unsigned pool = spec.globals + spec.locals;
    const unsigned k = pick(pool);
    std::string v = k < spec.globals ? var('g', k) : var('l', k - spec.globals);
    return (rng() & 1U) ? "!" + v : v;
  };
  static const char* const kOps[] = {" ^ ", " && ", " || ", " == "};

  std::ostringstream os;
  os << "// scaling family: " << spec.globals << " globals, " << spec.locals << " locals, depth "
     << spec.depth << ", seed " << spec.seed << "\n";
  os << "decl ";
  for (unsigned i = 0; i < spec.globals; ++i) os << (i ? ", " : "") << var('g', i);
  os << ";\ninit ";
  for (unsigned i = 0; i < spec.globals; ++i) os << (i ? " && " : "") << "!" << var('g', i);
  for (unsigned i = 0; i < spec.locals; ++i) os << " && !" << var('l', i);
  os << ";\n\nvoid main() begin\n";
  if (spec.locals) {
    os << "  decl ";
    for (unsigned i = 0; i < spec.locals; ++i) os << (i ? ", " : "") << var('l', i);
    os << ";\n";
  }
  unsigned pc = 1;
  if (spec.spawn) {
    os << "  " << pc << ": start_thread " << pc + 1 << ";\n";
    ++pc;
  }
  for (unsigned i = 0; i < spec.depth; ++i, ++pc) {
    std::vector<std::string> targets{var('g', (2 * i) % spec.globals)};
    if (spec.globals > 1) targets.push_back(var('g', (2 * i + 1) % spec.globals));
    std::vector<std::string> values;
    for (std::size_t t = 0; t < targets.size(); ++t)
      values.push_back(operand() + kOps[pick(4)] + operand());
    // Every fourth statement also draws a local at random.
    if (spec.locals && i % 4 == 3) {
      targets.push_back(var('l', pick(spec.locals)));
      values.push_back("*");
    }
    os << "  " << pc << ": ";
    for (std::size_t t = 0; t < targets.size(); ++t) os << (t ? ", " : "") << targets[t];
    os << " := ";
    for (std::size_t t = 0; t < values.size(); ++t) os << (t ? ", " : "") << values[t];
    os << ";\n";
  }
  if (spec.globals > 1)
    os << "  " << pc << ": assert(!(g0 && g1));\n";
  else
    os << "  " << pc << ": assert(!g0);\n";
  os << "end\n";
  return os.str();
}

}  // namespace jitbp
