#include "jitbp/tts.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jitbp/errors.hpp"

namespace jitbp {

const char* edge_operator(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Thread: return "->";
    case EdgeKind::Creation: return "+>";
    case EdgeKind::Broadcast: return "~>";
    case EdgeKind::Signal: return "?>";
  }
  return "??";
}

Tts::Tts(std::uint32_t shared_count, std::uint32_t local_count, std::vector<TtsEdge> edges)
    : shared_count_(shared_count), local_count_(local_count), edges_(std::move(edges)) {
  for (const TtsEdge& e : edges_) {
    if (e.src.g >= shared_count_ || e.dst.g >= shared_count_ || e.src.l >= local_count_ ||
        e.dst.l >= local_count_)
      throw PreconditionError("TTS edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

TtsConfig::TtsConfig(std::uint32_t g, std::vector<std::uint32_t> locals)
    : g_(g), locals_(std::move(locals)) {
  std::sort(locals_.begin(), locals_.end());
}

std::size_t TtsConfig::count(std::uint32_t l) const {
  auto [a, b] = std::equal_range(locals_.begin(), locals_.end(), l);
  return static_cast<std::size_t>(b - a);
}

std::size_t TtsConfigHash::operator()(const TtsConfig& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ c.g();
  for (std::uint32_t l : c.locals()) {
    h ^= l + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

std::string to_string(const TtsConfig& c) {
  std::string out = "(" + std::to_string(c.g()) + " |";
  for (std::uint32_t l : c.locals()) out += " " + std::to_string(l);
  return out + ")";
}

// ---- text format ----

namespace {

struct LineReader {
  std::string_view text;
  std::string file;
  std::size_t line = 0;
  std::size_t pos = 0;

  // Next non-empty, comment-stripped line; false at end of input.
  bool next(std::string_view& out) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line;
      if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
      while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back())))
        raw.remove_suffix(1);
      std::size_t b = 0;
      while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
      raw = raw.substr(b);
      if (!raw.empty()) {
        out = raw;
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError({file, line, 1}, msg); }
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t number(const LineReader& r, std::string_view tok) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    r.fail("expected a non-negative index, found '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Tts parse_tts(std::string_view text, const std::string& file) {
  LineReader r{text, file};
  std::string_view line;
  if (!r.next(line)) r.fail("missing header 'G L'");
  auto head = split(line);
  if (head.size() != 2) r.fail("header must be 'G L'");
  const std::uint32_t G = number(r, head[0]);
  const std::uint32_t L = number(r, head[1]);
  std::vector<TtsEdge> edges;
  while (r.next(line)) {
    auto f = split(line);
    if (f.size() != 5) r.fail("edge lines have the form 'g l OP g' l''");
    TtsEdge e;
    e.src = {number(r, f[0]), number(r, f[1])};
    e.dst = {number(r, f[3]), number(r, f[4])};
    if (f[2] == "->")
      e.kind = EdgeKind::Thread;
    else if (f[2] == "+>")
      e.kind = EdgeKind::Creation;
    else if (f[2] == "~>")
      e.kind = EdgeKind::Broadcast;
    else if (f[2] == "?>")
      e.kind = EdgeKind::Signal;
    else
      r.fail("unknown edge operator '" + std::string(f[2]) + "'");
    if (e.src.g >= G || e.dst.g >= G) r.fail("shared index out of range");
    if (e.src.l >= L || e.dst.l >= L) r.fail("local index out of range");
    edges.push_back(e);
  }
  return Tts(G, L, std::move(edges));
}

Tts read_tts_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError({path, 0, 0}, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tts(buf.str(), path);
}

std::string emit_tts(const Tts& t) {
  std::string out = std::to_string(t.shared_count()) + " " + std::to_string(t.local_count()) + "\n";
  for (const TtsEdge& e : t.edges()) {
    out += std::to_string(e.src.g);
    out += ' ';
    out += std::to_string(e.src.l);
    out += ' ';
    out += edge_operator(e.kind);
    out += ' ';
    out += std::to_string(e.dst.g);
    out += ' ';
    out += std::to_string(e.dst.l);
    out += '\n';
  }
  return out;
}

// ---- firing structure ----

TtsIndex::TtsIndex(const Tts& t) : tts_(&t) {
  const auto& edges = t.edges();
  auto has = [&](const TtsEdge& e) { return std::binary_search(edges.begin(), edges.end(), e); };
  for (const TtsEdge& e : edges) {
    if (e.kind == EdgeKind::Thread) continue;
    const bool twin = has({e.src, EdgeKind::Thread, e.dst});
    if (e.kind == EdgeKind::Creation || twin) continue;
    recv_[e.kind == EdgeKind::Broadcast ? 0 : 1][key(e.src.g, e.dst.g)].emplace_back(e.src.l,
                                                                                     e.dst.l);
  }
  for (const TtsEdge& e : edges) {
    if (e.kind != EdgeKind::Thread) continue;
    Move m{Role::Plain, e.src, e.dst, {}};
    // Creation edges from the same source, sorted right after its thread edges.
    for (auto it = std::lower_bound(edges.begin(), edges.end(),
                                    TtsEdge{e.src, EdgeKind::Creation, {0, 0}});
         it != edges.end() && it->src == e.src && it->kind == EdgeKind::Creation; ++it)
      if (it->dst.g == e.dst.g) m.spawns.push_back(it->dst.l);
    if (!m.spawns.empty())
      m.role = Role::Creator;
    else if (has({e.src, EdgeKind::Broadcast, e.dst}))
      m.role = Role::BroadcastSender;
    else if (has({e.src, EdgeKind::Signal, e.dst}))
      m.role = Role::SignalSender;
    out_[key(e.src.g, e.src.l)].push_back(m);
    into_[e.dst.g].push_back(std::move(m));
  }
  for (auto& kv : recv_)
    for (auto& [k, v] : kv) std::sort(v.begin(), v.end());
}

const std::vector<TtsIndex::Move>& TtsIndex::moves_from(std::uint32_t g, std::uint32_t l) const {
  auto it = out_.find(key(g, l));
  return it == out_.end() ? none_ : it->second;
}

const std::vector<TtsIndex::Move>& TtsIndex::moves_into(std::uint32_t g) const {
  auto it = into_.find(g);
  return it == into_.end() ? none_ : it->second;
}

std::vector<std::uint32_t> TtsIndex::receivers(EdgeKind kind, std::uint32_t g_pre,
                                               std::uint32_t g_post, std::uint32_t l) const {
  std::vector<std::uint32_t> out;
  const auto& table = recv_[kind == EdgeKind::Broadcast ? 0 : 1];
  auto it = table.find(key(g_pre, g_post));
  if (it == table.end()) return out;
  auto lo = std::lower_bound(it->second.begin(), it->second.end(), std::make_pair(l, 0U));
  for (; lo != it->second.end() && lo->first == l; ++lo) out.push_back(lo->second);
  return out;
}

std::vector<std::uint32_t> TtsIndex::receiver_sources(EdgeKind kind, std::uint32_t g_pre,
                                                      std::uint32_t g_post,
                                                      std::uint32_t l_post) const {
  std::vector<std::uint32_t> out;
  const auto& table = recv_[kind == EdgeKind::Broadcast ? 0 : 1];
  auto it = table.find(key(g_pre, g_post));
  if (it == table.end()) return out;
  for (const auto& [a, b] : it->second)
    if (b == l_post) out.push_back(a);
  return out;
}

// ---- images ----

namespace {

void sort_unique(std::vector<TtsConfig>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<std::uint32_t> without(const std::vector<std::uint32_t>& v, std::size_t i) {
  std::vector<std::uint32_t> out = v;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

bool take_one(std::vector<std::uint32_t>& v, std::uint32_t x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

// Emits one config per element of the cartesian product of `options`.
template <typename Emit>
void product(const std::vector<std::vector<std::uint32_t>>& options, Emit&& emit) {
  for (const auto& o : options)
    if (o.empty()) return;
  std::vector<std::size_t> pick(options.size(), 0);
  std::vector<std::uint32_t> cur(options.size());
  for (;;) {
    for (std::size_t j = 0; j < options.size(); ++j) cur[j] = options[j][pick[j]];
    emit(cur);
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == options[j].size()) pick[j++] = 0;
    if (j == pick.size()) return;
  }
}

}  // namespace

std::vector<TtsConfig> tts_post(const TtsIndex& idx, const TtsConfig& c) {
  std::vector<TtsConfig> out;
  const auto& ls = c.locals();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i > 0 && ls[i] == ls[i - 1]) continue;
    const std::vector<std::uint32_t> rest = without(ls, i);
    for (const TtsIndex::Move& m : idx.moves_from(c.g(), ls[i])) {
      const std::uint32_t g2 = m.dst.g;
      switch (m.role) {
        case TtsIndex::Role::Plain: {
          auto next = rest;
          next.push_back(m.dst.l);
          out.emplace_back(g2, std::move(next));
          break;
        }
        case TtsIndex::Role::Creator:
          for (std::uint32_t s : m.spawns) {
            auto next = rest;
            next.push_back(m.dst.l);
            next.push_back(s);
            out.emplace_back(g2, std::move(next));
          }
          break;
        case TtsIndex::Role::BroadcastSender: {
          std::vector<std::vector<std::uint32_t>> options(rest.size());
          for (std::size_t j = 0; j < rest.size(); ++j) {
            options[j] = idx.receivers(EdgeKind::Broadcast, c.g(), g2, rest[j]);
            if (options[j].empty()) options[j].push_back(rest[j]);
          }
          product(options, [&](const std::vector<std::uint32_t>& cur) {
            auto next = cur;
            next.push_back(m.dst.l);
            out.emplace_back(g2, std::move(next));
          });
          break;
        }
        case TtsIndex::Role::SignalSender: {
          bool any = false;
          for (std::size_t j = 0; j < rest.size(); ++j) {
            if (j > 0 && rest[j] == rest[j - 1]) continue;
            for (std::uint32_t r : idx.receivers(EdgeKind::Signal, c.g(), g2, rest[j])) {
              any = true;
              auto next = rest;
              next[j] = r;
              next.push_back(m.dst.l);
              out.emplace_back(g2, std::move(next));
            }
          }
          if (!any) {
            auto next = rest;
            next.push_back(m.dst.l);
            out.emplace_back(g2, std::move(next));
          }
          break;
        }
      }
    }
  }
  sort_unique(out);
  return out;
}

std::vector<TtsConfig> tts_pre(const TtsIndex& idx, const TtsConfig& c) {
  std::vector<TtsConfig> out;
  for (const TtsIndex::Move& m : idx.moves_into(c.g())) {
    std::vector<std::uint32_t> rest = c.locals();
    if (!take_one(rest, m.dst.l)) continue;
    const std::uint32_t g0 = m.src.g;
    switch (m.role) {
      case TtsIndex::Role::Plain:
        rest.push_back(m.src.l);
        out.emplace_back(g0, std::move(rest));
        break;
      case TtsIndex::Role::Creator:
        for (std::uint32_t s : m.spawns) {
          auto pre = rest;
          if (!take_one(pre, s)) continue;
          pre.push_back(m.src.l);
          out.emplace_back(g0, std::move(pre));
        }
        break;
      case TtsIndex::Role::BroadcastSender: {
        std::vector<std::vector<std::uint32_t>> options(rest.size());
        for (std::size_t j = 0; j < rest.size(); ++j) {
          if (idx.receivers(EdgeKind::Broadcast, g0, c.g(), rest[j]).empty())
            options[j].push_back(rest[j]);
          for (std::uint32_t s : idx.receiver_sources(EdgeKind::Broadcast, g0, c.g(), rest[j]))
            options[j].push_back(s);
        }
        product(options, [&](const std::vector<std::uint32_t>& cur) {
          auto pre = cur;
          pre.push_back(m.src.l);
          out.emplace_back(g0, std::move(pre));
        });
        break;
      }
      case TtsIndex::Role::SignalSender: {
        const bool none_eligible = std::none_of(rest.begin(), rest.end(), [&](std::uint32_t x) {
          return !idx.receivers(EdgeKind::Signal, g0, c.g(), x).empty();
        });
        if (none_eligible) {
          auto pre = rest;
          pre.push_back(m.src.l);
          out.emplace_back(g0, std::move(pre));
        }
        for (std::size_t j = 0; j < rest.size(); ++j) {
          if (j > 0 && rest[j] == rest[j - 1]) continue;
          for (std::uint32_t s : idx.receiver_sources(EdgeKind::Signal, g0, c.g(), rest[j])) {
            auto pre = rest;
            pre[j] = s;
            pre.push_back(m.src.l);
            out.emplace_back(g0, std::move(pre));
          }
        }
        break;
      }
    }
  }
  sort_unique(out);
  return out;
}

std::vector<TtsConfig> tts_post(const Tts& t, const TtsConfig& c) { return tts_post(TtsIndex(t), c); }
std::vector<TtsConfig> tts_pre(const Tts& t, const TtsConfig& c) { return tts_pre(TtsIndex(t), c); }

}  // namespace jitbp
