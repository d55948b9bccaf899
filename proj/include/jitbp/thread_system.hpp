#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "jitbp/converter.hpp"
#include "jitbp/image_engine.hpp"
#include "jitbp/tts.hpp"

namespace jitbp {

/// An active step of one thread in index space. `l_post` is unused for
/// Terminate, `spawn` only for Create.
struct LocalMove {
  MoveKind kind = MoveKind::Plain;
  std::uint32_t g_pre = 0;
  std::uint32_t l_pre = 0;
  std::uint32_t g_post = 0;
  std::uint32_t l_post = 0;
  std::uint32_t spawn = 0;

  friend auto operator<=>(const LocalMove&, const LocalMove&) = default;
};

/// Per-thread view of a system used by the counter-based explorers (KM,
/// backward search). Receivers are the passive threads released by a
/// broadcast or signal whose sender moves the shared state g_pre -> g_post.
class ThreadSystem {
 public:
  virtual ~ThreadSystem() = default;

  /// Length of counter vectors.
  virtual std::uint32_t local_count() const = 0;

  virtual std::vector<LocalMove> moves_from(std::uint32_t g, std::uint32_t l) const = 0;
  virtual std::vector<LocalMove> moves_into(std::uint32_t g_post) const = 0;

  /// Receiver targets of a passive thread at `l`; empty if not eligible.
  virtual std::vector<std::uint32_t> receivers(MoveKind sender, std::uint32_t g_pre,
                                               std::uint32_t g_post, std::uint32_t l) const = 0;
  /// Every receiver (source, target) pair for the given sender transition.
  virtual std::vector<std::pair<std::uint32_t, std::uint32_t>> receivers_all(
      MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post) const = 0;

  bool eligible(MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post, std::uint32_t l) const {
    return !receivers(sender, g_pre, g_post, l).empty();
  }
};

/// Thread view of an explicit TTS. Thread edges into `sink` are reported
/// as Terminate moves.
class TtsThreadSystem final : public ThreadSystem {
 public:
  TtsThreadSystem(const TtsIndex& index, std::optional<std::uint32_t> sink = std::nullopt);

  std::uint32_t local_count() const override { return index_.tts().local_count(); }
  std::vector<LocalMove> moves_from(std::uint32_t g, std::uint32_t l) const override;
  std::vector<LocalMove> moves_into(std::uint32_t g_post) const override;
  std::vector<std::uint32_t> receivers(MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post,
                                       std::uint32_t l) const override;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> receivers_all(
      MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post) const override;

 private:
  std::vector<LocalMove> convert(const TtsIndex::Move& m) const;

  const TtsIndex& index_;
  std::optional<std::uint32_t> sink_;
  std::map<std::pair<std::uint32_t, std::uint32_t>,
           std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      recv_by_pair_[2];
};

/// Thread view computed on the program through the image engine and a
/// converter. Backward move sets are memoized per shared state; the cache
/// is guarded, so one instance may be used from several threads.
class JitThreadSystem final : public ThreadSystem {
 public:
  JitThreadSystem(const ImageEngine& engine, const Converter& cv);

  std::uint32_t local_count() const override { return cv_.local_count(); }
  std::vector<LocalMove> moves_from(std::uint32_t g, std::uint32_t l) const override;
  std::vector<LocalMove> moves_into(std::uint32_t g_post) const override;
  std::vector<std::uint32_t> receivers(MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post,
                                       std::uint32_t l) const override;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> receivers_all(
      MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post) const override;

 private:
  LocalMove encode(const ThreadMove& m) const;

  const ImageEngine& engine_;
  const Converter& cv_;
  mutable std::mutex mu_;
  mutable std::map<std::uint32_t, std::vector<LocalMove>> into_cache_;
};

}  // namespace jitbp
