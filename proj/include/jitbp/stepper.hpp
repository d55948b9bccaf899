#pragma once

#include <optional>
#include <vector>

#include "jitbp/converter.hpp"
#include "jitbp/image_engine.hpp"
#include "jitbp/program.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

/// Image provider for the worklist explorers: a set-valued, deterministic
/// step function in one direction.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual Direction direction() const = 0;
  /// Appends the images of `w` to `out` (sorted, duplicate-free on return
  /// when `out` starts empty).
  virtual void step(const TtsConfig& w, std::vector<TtsConfig>& out) const = 0;

  std::vector<TtsConfig> step(const TtsConfig& w) const {
    std::vector<TtsConfig> out;
    step(w, out);
    return out;
  }
};

/// Drops every thread at local index `sink`.
TtsConfig without_sink(const TtsConfig& c, std::uint32_t sink);

/// Images from an explicit TTS. With a sink index, terminated threads are
/// dropped from results, and backward steps also consider one thread that
/// terminated into the sink.
class TtsStepper final : public Stepper {
 public:
  TtsStepper(const Tts& t, Direction dir, std::optional<std::uint32_t> sink = std::nullopt);

  using Stepper::step;
  Direction direction() const override { return dir_; }
  void step(const TtsConfig& w, std::vector<TtsConfig>& out) const override;
  const TtsIndex& index() const noexcept { return index_; }

 private:
  TtsIndex index_;
  Direction dir_;
  std::optional<std::uint32_t> sink_;
};

/// Images computed on the program: f^-1(post_config(f(w))) or
/// f^-1(pre_config(f(w))).
class JitStepper final : public Stepper {
 public:
  /// Throws DirectionError if the program's mode does not enable `dir`.
  JitStepper(const ImageEngine& engine, const Converter& cv, Direction dir);

  using Stepper::step;
  Direction direction() const override { return dir_; }
  void step(const TtsConfig& w, std::vector<TtsConfig>& out) const override;

 private:
  const ImageEngine& engine_;
  const Converter& cv_;
  Direction dir_;
};

/// One JIT image without constructing a stepper.
std::vector<TtsConfig> jit_step(const ImageEngine& engine, const Converter& cv,
                                const TtsConfig& w, Direction dir);

}  // namespace jitbp
