#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jitbp/program.hpp"
#include "jitbp/state.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

/// Bidirectional mapping between program states and TTS indices. Subclasses
/// fix the index layout; the set-level maps f / f^-1 are shared.
class Converter {
 public:
  Converter(std::size_t global_count, std::size_t local_count, Pc pc_max);
  virtual ~Converter() = default;

  std::size_t global_vars() const noexcept { return globals_; }
  std::size_t local_vars() const noexcept { return locals_; }
  Pc pc_max() const noexcept { return pc_max_; }

  /// Number of shared indices, 2^|V_G|.
  std::uint32_t shared_count() const noexcept { return std::uint32_t{1} << globals_; }
  /// Size of the local index range (including unused slots, if any).
  virtual std::uint32_t local_count() const = 0;
  virtual std::string name() const = 0;

  std::uint32_t encode_shared(Valuation g) const;
  Valuation decode_shared(std::uint32_t g) const;
  virtual std::uint32_t encode_local(const LocalState& l) const = 0;
  /// Throws DecodeError for indices outside the image of encode_local.
  virtual LocalState decode_local(std::uint32_t l) const = 0;
  virtual bool decodable(std::uint32_t l) const { return l < local_count(); }

  TtsState encode_thread(const ThreadState& s) const;
  ThreadState decode_thread(TtsState s) const;

  /// f: system configuration to program configuration.
  ProgramConfig to_program(const TtsConfig& c) const;
  TtsConfig to_system(const ProgramConfig& c) const;
  /// f^-1 on sets; the result is sorted and duplicate-free.
  std::vector<TtsConfig> to_system(const std::vector<ProgramConfig>& cs) const;

 protected:
  void check(const LocalState& l) const;

 private:
  std::size_t globals_;
  std::size_t locals_;
  Pc pc_max_;
};

/// l = locals * pc_max + (pc - 1); every index in range is used.
class DenseConverter final : public Converter {
 public:
  using Converter::Converter;
  explicit DenseConverter(const BoolProgram& p)
      : Converter(p.globals().size(), p.locals().size(), p.pc_max()) {}

  std::uint32_t local_count() const override;
  std::string name() const override { return "dense"; }
  std::uint32_t encode_local(const LocalState& l) const override;
  LocalState decode_local(std::uint32_t l) const override;
};

/// l = locals * (pc_max + 1) + pc, leaving the pc = 0 slots unused.
class FigureConverter final : public Converter {
 public:
  using Converter::Converter;
  explicit FigureConverter(const BoolProgram& p)
      : Converter(p.globals().size(), p.locals().size(), p.pc_max()) {}

  std::uint32_t local_count() const override;
  std::string name() const override { return "figure"; }
  std::uint32_t encode_local(const LocalState& l) const override;
  LocalState decode_local(std::uint32_t l) const override;
  bool decodable(std::uint32_t l) const override;
};

/// "dense" or "figure"; throws PreconditionError otherwise.
std::unique_ptr<Converter> make_converter(const std::string& name, const BoolProgram& p);

}  // namespace jitbp
