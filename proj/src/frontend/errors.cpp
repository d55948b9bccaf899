#include "jitbp/errors.hpp"

namespace jitbp {

std::string SourceLocation::to_string() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

ParseError::ParseError(SourceLocation where, const std::string& what)
    : Error(where.to_string() + ": " + what), where_(std::move(where)) {}

CapExceeded::CapExceeded(std::size_t nominal, std::size_t cap)
    : Error("translation needs " + std::to_string(nominal) + " thread states, cap is " +
            std::to_string(cap)),
      nominal_(nominal),
      cap_(cap) {}

}  // namespace jitbp
