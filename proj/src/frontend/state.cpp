#include "jitbp/state.hpp"

#include <algorithm>

namespace jitbp {

ProgramConfig::ProgramConfig(Valuation shared, std::vector<LocalState> threads)
    : shared_(shared), threads_(std::move(threads)) {
  std::sort(threads_.begin(), threads_.end());
}

namespace {

std::string bits(Valuation v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i] + "=" + (v[i] ? "1" : "0");
  }
  return out;
}

}  // namespace

std::string to_string(const LocalState& l, const BoolProgram& p) {
  std::string out = "pc=" + std::to_string(l.pc);
  if (!p.locals().empty()) out += " " + bits(l.locals, p.locals());
  return out;
}

std::string to_string(const ProgramConfig& c, const BoolProgram& p) {
  std::string out = "[" + bits(c.shared(), p.globals()) + " |";
  for (const LocalState& l : c.threads()) out += " {" + to_string(l, p) + "}";
  return out + "]";
}

}  // namespace jitbp
