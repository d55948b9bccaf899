#include "jitbp/converter.hpp"

#include <algorithm>

#include "jitbp/errors.hpp"

namespace jitbp {

Converter::Converter(std::size_t global_count, std::size_t local_count, Pc pc_max)
    : globals_(global_count), locals_(local_count), pc_max_(pc_max) {
  const std::uint64_t local_span = (std::uint64_t{1} << std::min<std::size_t>(local_count, 40)) *
                                   (std::uint64_t{pc_max} + 1);
  if (global_count > 31 || local_count > 31 || local_span > 0xffffffffULL)
    throw PreconditionError("program too large for 32-bit state indices");
  if (pc_max < 1) throw PreconditionError("converter needs at least one program location");
}

std::uint32_t Converter::encode_shared(Valuation g) const {
  if (g.bits >> globals_) throw PreconditionError("shared valuation wider than the program");
  return static_cast<std::uint32_t>(g.bits);
}

Valuation Converter::decode_shared(std::uint32_t g) const {
  if (g >= shared_count()) throw DecodeError("shared index " + std::to_string(g) + " out of range");
  return Valuation{g};
}

void Converter::check(const LocalState& l) const {
  if (l.pc < 1 || l.pc > pc_max_)
    throw PreconditionError("pc " + std::to_string(l.pc) + " out of range");
  if (l.locals.bits >> locals_) throw PreconditionError("local valuation wider than the program");
}

TtsState Converter::encode_thread(const ThreadState& s) const {
  return {encode_shared(s.shared), encode_local(s.local)};
}

ThreadState Converter::decode_thread(TtsState s) const {
  return {decode_shared(s.g), decode_local(s.l)};
}

ProgramConfig Converter::to_program(const TtsConfig& c) const {
  std::vector<LocalState> threads;
  threads.reserve(c.size());
  for (std::uint32_t l : c.locals()) threads.push_back(decode_local(l));
  return ProgramConfig(decode_shared(c.g()), std::move(threads));
}

TtsConfig Converter::to_system(const ProgramConfig& c) const {
  std::vector<std::uint32_t> locals;
  locals.reserve(c.size());
  for (const LocalState& l : c.threads()) locals.push_back(encode_local(l));
  return TtsConfig(encode_shared(c.shared()), std::move(locals));
}

std::vector<TtsConfig> Converter::to_system(const std::vector<ProgramConfig>& cs) const {
  std::vector<TtsConfig> out;
  out.reserve(cs.size());
  for (const ProgramConfig& c : cs) out.push_back(to_system(c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t DenseConverter::local_count() const {
  return static_cast<std::uint32_t>((std::uint64_t{1} << local_vars()) * pc_max());
}

std::uint32_t DenseConverter::encode_local(const LocalState& l) const {
  check(l);
  return static_cast<std::uint32_t>(l.locals.bits * pc_max() + (l.pc - 1));
}

LocalState DenseConverter::decode_local(std::uint32_t l) const {
  if (l >= local_count()) throw DecodeError("local index " + std::to_string(l) + " out of range");
  return {l % pc_max() + 1, Valuation{l / pc_max()}};
}

std::uint32_t FigureConverter::local_count() const {
  return static_cast<std::uint32_t>((std::uint64_t{1} << local_vars()) * (pc_max() + 1));
}

std::uint32_t FigureConverter::encode_local(const LocalState& l) const {
  check(l);
  return static_cast<std::uint32_t>(l.locals.bits * (pc_max() + 1) + l.pc);
}

bool FigureConverter::decodable(std::uint32_t l) const {
  return l < local_count() && l % (pc_max() + 1) != 0;
}

LocalState FigureConverter::decode_local(std::uint32_t l) const {
  if (!decodable(l)) throw DecodeError("local index " + std::to_string(l) + " is not a program state");
  return {l % (pc_max() + 1), Valuation{l / (pc_max() + 1)}};
}

std::unique_ptr<Converter> make_converter(const std::string& name, const BoolProgram& p) {
  if (name == "dense") return std::make_unique<DenseConverter>(p);
  if (name == "figure") return std::make_unique<FigureConverter>(p);
  throw PreconditionError("unknown converter '" + name + "'");
}

}  // namespace jitbp
