#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jitbp {

/// Edge kinds and their file operators: `->` thread, `+>` creation,
/// `~>` broadcast, `?>` signal.
enum class EdgeKind : std::uint8_t { Thread, Creation, Broadcast, Signal };

const char* edge_operator(EdgeKind kind);

struct TtsState {
  std::uint32_t g = 0;
  std::uint32_t l = 0;

  friend auto operator<=>(const TtsState&, const TtsState&) = default;
};

struct TtsEdge {
  TtsState src;
  EdgeKind kind = EdgeKind::Thread;
  TtsState dst;

  friend auto operator<=>(const TtsEdge&, const TtsEdge&) = default;
};

/// Thread transition system over shared states [0, G) and local states
/// [0, L). Edges are kept sorted and duplicate-free.
class Tts {
 public:
  Tts() = default;
  Tts(std::uint32_t shared_count, std::uint32_t local_count, std::vector<TtsEdge> edges);

  std::uint32_t shared_count() const noexcept { return shared_count_; }
  std::uint32_t local_count() const noexcept { return local_count_; }
  const std::vector<TtsEdge>& edges() const noexcept { return edges_; }

  friend bool operator==(const Tts&, const Tts&) = default;

 private:
  std::uint32_t shared_count_ = 0;
  std::uint32_t local_count_ = 0;
  std::vector<TtsEdge> edges_;
};

/// Shared state plus a multiset of local states (kept sorted).
class TtsConfig {
 public:
  TtsConfig() = default;
  TtsConfig(std::uint32_t g, std::vector<std::uint32_t> locals);

  std::uint32_t g() const noexcept { return g_; }
  const std::vector<std::uint32_t>& locals() const noexcept { return locals_; }
  std::size_t size() const noexcept { return locals_.size(); }
  std::size_t count(std::uint32_t l) const;

  friend auto operator<=>(const TtsConfig&, const TtsConfig&) = default;

 private:
  std::uint32_t g_ = 0;
  std::vector<std::uint32_t> locals_;
};

struct TtsConfigHash {
  std::size_t operator()(const TtsConfig& c) const noexcept;
};

std::string to_string(const TtsConfig& c);

/// Parses the text format: header `G L`, then one `g l OP g' l'` edge per
/// line; `#` starts a comment. Throws ParseError.
Tts parse_tts(std::string_view text, const std::string& file = "<tts>");
Tts read_tts_file(const std::string& path);

/// Canonical text: header, then edges in sorted order.
std::string emit_tts(const Tts& t);

/// Firing structure of a TTS.
///
/// A thread edge that has a creation edge from the same source into the
/// same target shared state is a creator and fires together with it. A
/// thread edge with an identical `~>` (`?>`) twin is a broadcast (signal)
/// sender; the twin only marks it. Every other `~>`/`?>` edge is a receiver,
/// applicable to a passive thread when its source and target shared states
/// equal the sender's.
class TtsIndex {
 public:
  enum class Role : std::uint8_t { Plain, Creator, BroadcastSender, SignalSender };

  struct Move {
    Role role = Role::Plain;
    TtsState src;
    TtsState dst;
    std::vector<std::uint32_t> spawns;  // creator only: spawned local per creation edge
  };

  explicit TtsIndex(const Tts& t);

  const Tts& tts() const noexcept { return *tts_; }

  /// Active moves leaving (g, l).
  const std::vector<Move>& moves_from(std::uint32_t g, std::uint32_t l) const;
  /// Active moves whose target shared state is g.
  const std::vector<Move>& moves_into(std::uint32_t g) const;

  /// Receiver target locals for a passive thread at `l` when a sender moves
  /// the shared state from g_pre to g_post. Empty: not eligible.
  std::vector<std::uint32_t> receivers(EdgeKind kind, std::uint32_t g_pre, std::uint32_t g_post,
                                       std::uint32_t l) const;
  /// Locals from which a receiver edge leads to `l_post` (inverse of receivers).
  std::vector<std::uint32_t> receiver_sources(EdgeKind kind, std::uint32_t g_pre,
                                              std::uint32_t g_post, std::uint32_t l_post) const;

 private:
  static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    return (std::uint64_t{a} << 32) | b;
  }

  const Tts* tts_;
  std::unordered_map<std::uint64_t, std::vector<Move>> out_;
  std::unordered_map<std::uint32_t, std::vector<Move>> into_;
  // Receivers keyed by (g_pre, g_post) for each of broadcast and signal.
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> recv_[2];
  std::vector<Move> none_;
};

/// One-step successors under the TTS firing rules. Sorted, duplicate-free.
std::vector<TtsConfig> tts_post(const TtsIndex& idx, const TtsConfig& c);
/// Exact predecessors: p is returned iff c is in tts_post(p).
std::vector<TtsConfig> tts_pre(const TtsIndex& idx, const TtsConfig& c);

std::vector<TtsConfig> tts_post(const Tts& t, const TtsConfig& c);
std::vector<TtsConfig> tts_pre(const Tts& t, const TtsConfig& c);

}  // namespace jitbp
