#include "random_tts.hpp"

#include "interpreter.hpp"
#include "jitbp/backward.hpp"
#include "jitbp/explore.hpp"

namespace testsupport {

using namespace jitbp;

jitbp::Tts random_tts(std::mt19937_64& rng, const TtsShape& shape) {
  auto below = [&](std::uint32_t n) { return static_cast<std::uint32_t>(rng() % n); };
  const std::uint32_t G = 1 + below(shape.max_shared);
  const std::uint32_t L = 2 + below(shape.max_local - 1);
  auto state = [&] { return TtsState{below(G), below(L)}; };

  std::vector<TtsEdge> edges;
  const unsigned n = 1 + below(shape.thread_edges);
  for (unsigned i = 0; i < n; ++i) edges.push_back({state(), EdgeKind::Thread, state()});
  if (shape.creation && below(3) != 0) {
    for (unsigned i = 0, k = 1 + below(2); i < k; ++i) {
      const TtsState s = state(), d = state();
      edges.push_back({s, EdgeKind::Thread, d});
      edges.push_back({s, EdgeKind::Creation, {d.g, below(L)}});
    }
  }
  auto sync = [&](EdgeKind kind) {
    const TtsState s = state(), d = state();
    edges.push_back({s, EdgeKind::Thread, d});
    edges.push_back({s, kind, d});
    for (unsigned i = 0, k = 1 + below(3); i < k; ++i)
      edges.push_back({{s.g, below(L)}, kind, {d.g, below(L)}});
  };
  if (shape.broadcast && below(2) == 0) sync(EdgeKind::Broadcast);
  if (shape.signal && below(3) == 0) sync(EdgeKind::Signal);
  return Tts(G, L, std::move(edges));
}

std::vector<TtsConfig> brute_cover_preimage(const TtsIndex& idx, const TtsConfig& w) {
  std::vector<TtsConfig> hits;
  for (const TtsConfig& p :
       all_tts_configs(idx.tts().shared_count(), idx.tts().local_count(), w.size() + 2)) {
    for (const TtsConfig& s : tts_post(idx, p))
      if (covers(s, w)) {
        hits.push_back(p);
        break;
      }
  }
  return minimize(std::move(hits));
}

}  // namespace testsupport
