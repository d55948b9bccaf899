#include "jitbp/thread_system.hpp"

#include <algorithm>

#include "jitbp/thread_sets.hpp"

namespace jitbp {

namespace {

int slot(MoveKind sender) { return sender == MoveKind::BroadcastSend ? 0 : 1; }

}  // namespace

TtsThreadSystem::TtsThreadSystem(const TtsIndex& index, std::optional<std::uint32_t> sink)
    : index_(index), sink_(sink) {
  const auto& edges = index_.tts().edges();
  for (const TtsEdge& e : edges) {
    if (e.kind != EdgeKind::Broadcast && e.kind != EdgeKind::Signal) continue;
    if (std::binary_search(edges.begin(), edges.end(), TtsEdge{e.src, EdgeKind::Thread, e.dst}))
      continue;  // sender marker
    const int k = e.kind == EdgeKind::Broadcast ? 0 : 1;
    recv_by_pair_[k][{e.src.g, e.dst.g}].emplace_back(e.src.l, e.dst.l);
  }
}

std::vector<LocalMove> TtsThreadSystem::convert(const TtsIndex::Move& m) const {
  std::vector<LocalMove> out;
  LocalMove base{MoveKind::Plain, m.src.g, m.src.l, m.dst.g, m.dst.l, 0};
  switch (m.role) {
    case TtsIndex::Role::Plain:
      if (sink_ && m.dst.l == *sink_) {
        base.kind = MoveKind::Terminate;
        base.l_post = 0;
      }
      out.push_back(base);
      break;
    case TtsIndex::Role::Creator:
      base.kind = MoveKind::Create;
      for (std::uint32_t s : m.spawns) {
        base.spawn = s;
        out.push_back(base);
      }
      break;
    case TtsIndex::Role::BroadcastSender:
      base.kind = MoveKind::BroadcastSend;
      out.push_back(base);
      break;
    case TtsIndex::Role::SignalSender:
      base.kind = MoveKind::SignalSend;
      out.push_back(base);
      break;
  }
  return out;
}

std::vector<LocalMove> TtsThreadSystem::moves_from(std::uint32_t g, std::uint32_t l) const {
  std::vector<LocalMove> out;
  for (const auto& m : index_.moves_from(g, l))
    for (const LocalMove& x : convert(m)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalMove> TtsThreadSystem::moves_into(std::uint32_t g_post) const {
  std::vector<LocalMove> out;
  for (const auto& m : index_.moves_into(g_post))
    for (const LocalMove& x : convert(m)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> TtsThreadSystem::receivers(MoveKind sender, std::uint32_t g_pre,
                                                      std::uint32_t g_post, std::uint32_t l) const {
  return index_.receivers(sender == MoveKind::BroadcastSend ? EdgeKind::Broadcast : EdgeKind::Signal,
                          g_pre, g_post, l);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> TtsThreadSystem::receivers_all(
    MoveKind sender, std::uint32_t g_pre, std::uint32_t g_post) const {
  const auto& table = recv_by_pair_[slot(sender)];
  auto it = table.find({g_pre, g_post});
  if (it == table.end()) return {};
  return it->second;
}

JitThreadSystem::JitThreadSystem(const ImageEngine& engine, const Converter& cv)
    : engine_(engine), cv_(cv) {}

LocalMove JitThreadSystem::encode(const ThreadMove& m) const {
  LocalMove x;
  x.kind = m.kind;
  x.g_pre = cv_.encode_shared(m.pre.shared);
  x.l_pre = cv_.encode_local(m.pre.local);
  x.g_post = cv_.encode_shared(m.shared_post);
  if (m.kind != MoveKind::Terminate) x.l_post = cv_.encode_local(m.post);
  if (m.kind == MoveKind::Create) x.spawn = cv_.encode_local(m.spawn);
  return x;
}

std::vector<LocalMove> JitThreadSystem::moves_from(std::uint32_t g, std::uint32_t l) const {
  std::vector<LocalMove> out;
  for (const ThreadMove& m : engine_.moves_from(cv_.decode_thread({g, l}))) out.push_back(encode(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalMove> JitThreadSystem::moves_into(std::uint32_t g_post) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = into_cache_.find(g_post);
    if (it != into_cache_.end()) return it->second;
  }
  std::vector<LocalMove> out;
  for (const ThreadMove& m : engine_.moves_into(cv_.decode_shared(g_post))) out.push_back(encode(m));
  std::sort(out.begin(), out.end());
  std::lock_guard<std::mutex> lock(mu_);
  return into_cache_.emplace(g_post, std::move(out)).first->second;
}

std::vector<std::uint32_t> JitThreadSystem::receivers(MoveKind, std::uint32_t g_pre,
                                                      std::uint32_t g_post, std::uint32_t l) const {
  if (g_pre != g_post || !cv_.decodable(l)) return {};
  const LocalState s = cv_.decode_local(l);
  if (!engine_.is_waiting(s)) return {};
  return {cv_.encode_local({engine_.program().next_pc(s.pc), s.locals})};
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> JitThreadSystem::receivers_all(
    MoveKind, std::uint32_t g_pre, std::uint32_t g_post) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (g_pre != g_post) return out;
  const BoolProgram& p = engine_.program();
  for (Pc pc = 1; pc <= p.pc_max(); ++pc) {
    if (!p.is_wait(pc)) continue;
    for_each_valuation(p.locals().size(), [&](Valuation l) {
      out.emplace_back(cv_.encode_local({pc, l}), cv_.encode_local({p.next_pc(pc), l}));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace jitbp
