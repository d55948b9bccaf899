#include "jitbp/stepper.hpp"

#include <algorithm>

#include "jitbp/errors.hpp"

namespace jitbp {

namespace {

void sort_unique(std::vector<TtsConfig>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TtsConfig without_sink(const TtsConfig& c, std::uint32_t sink) {
  if (c.count(sink) == 0) return c;
  std::vector<std::uint32_t> ls;
  for (std::uint32_t l : c.locals())
    if (l != sink) ls.push_back(l);
  return TtsConfig(c.g(), std::move(ls));
}

TtsStepper::TtsStepper(const Tts& t, Direction dir, std::optional<std::uint32_t> sink)
    : index_(t), dir_(dir), sink_(sink) {}

void TtsStepper::step(const TtsConfig& w, std::vector<TtsConfig>& out) const {
  const std::size_t first = out.size();
  if (dir_ == Direction::Post) {
    for (TtsConfig& c : tts_post(index_, w)) out.push_back(std::move(c));
  } else {
    std::vector<std::uint32_t> ls = w.locals();
    if (sink_) ls.push_back(*sink_);
    for (TtsConfig& c : tts_pre(index_, TtsConfig(w.g(), std::move(ls)))) out.push_back(std::move(c));
  }
  if (sink_) {
    for (std::size_t i = first; i < out.size(); ++i) out[i] = without_sink(out[i], *sink_);
  }
  if (first == 0) sort_unique(out);
}

JitStepper::JitStepper(const ImageEngine& engine, const Converter& cv, Direction dir)
    : engine_(engine), cv_(cv), dir_(dir) {
  if (!engine.supports(dir))
    throw DirectionError(std::string("direction ") + to_string(dir) + " not prepared in mode " +
                         to_string(engine.program().mode()));
}

void JitStepper::step(const TtsConfig& w, std::vector<TtsConfig>& out) const {
  const ProgramConfig c = cv_.to_program(w);
  const auto images = dir_ == Direction::Post ? engine_.post_config(c) : engine_.pre_config(c);
  for (const ProgramConfig& p : images) out.push_back(cv_.to_system(p));
  if (out.size() == images.size()) sort_unique(out);
}

std::vector<TtsConfig> jit_step(const ImageEngine& engine, const Converter& cv,
                                const TtsConfig& w, Direction dir) {
  return JitStepper(engine, cv, dir).step(w);
}

}  // namespace jitbp
