#include "jitbp/translate.hpp"

#include "jitbp/errors.hpp"
#include "jitbp/image_engine.hpp"

namespace jitbp {

Translation translate(const BoolProgram& p, const Converter& cv, std::size_t cap) {
  const std::uint64_t nominal = std::uint64_t{cv.shared_count()} * cv.local_count();
  if (nominal > cap) throw CapExceeded(nominal, cap);
  ImageEngine engine(p);
  if (!engine.supports(Direction::Post))
    throw DirectionError("translation needs forward images (mode post or both)");

  const std::uint32_t sink = cv.local_count();
  const bool has_broadcast = p.has_kind(StmtKind::Broadcast);
  const bool has_signal = p.has_kind(StmtKind::Signal);
  std::vector<TtsEdge> edges;
  for (std::uint32_t g = 0; g < cv.shared_count(); ++g) {
    for (std::uint32_t l = 0; l < cv.local_count(); ++l) {
      if (!cv.decodable(l)) continue;
      const ThreadState s = cv.decode_thread({g, l});
      const TtsState src{g, l};
      if (engine.is_waiting(s.local)) {
        const TtsState woken{g, cv.encode_local({p.next_pc(s.local.pc), s.local.locals})};
        if (has_broadcast) edges.push_back({src, EdgeKind::Broadcast, woken});
        if (has_signal) edges.push_back({src, EdgeKind::Signal, woken});
        continue;
      }
      for (const ThreadMove& m : engine.moves_from(s)) {
        const std::uint32_t g2 = cv.encode_shared(m.shared_post);
        if (m.kind == MoveKind::Terminate) {
          edges.push_back({src, EdgeKind::Thread, {g2, sink}});
          continue;
        }
        const TtsState dst{g2, cv.encode_local(m.post)};
        edges.push_back({src, EdgeKind::Thread, dst});
        switch (m.kind) {
          case MoveKind::Create:
            edges.push_back({src, EdgeKind::Creation, {g2, cv.encode_local(m.spawn)}});
            break;
          case MoveKind::BroadcastSend:
            edges.push_back({src, EdgeKind::Broadcast, dst});
            break;
          case MoveKind::SignalSend:
            edges.push_back({src, EdgeKind::Signal, dst});
            break;
          default:
            break;
        }
      }
    }
  }
  return {Tts(cv.shared_count(), sink + 1, std::move(edges)), sink};
}

}  // namespace jitbp
