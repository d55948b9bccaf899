#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jitbp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Source position inside a Boolean program text (1-based).
struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  std::string to_string() const;
};

/// Lexical, syntactic and validation errors from the frontend. The message
/// carries a `file:line:col: ` prefix.
class ParseError : public Error {
 public:
  ParseError(SourceLocation where, const std::string& what);
  const SourceLocation& where() const noexcept { return where_; }

 private:
  SourceLocation where_;
};

/// An image direction was requested that the program's direction mode did
/// not prepare.
class DirectionError : public Error {
 public:
  using Error::Error;
};

/// A TTS index that has no program-state preimage under a converter.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Up-front translation would exceed the configured thread-state cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t nominal, std::size_t cap);
  std::size_t nominal() const noexcept { return nominal_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t nominal_;
  std::size_t cap_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace jitbp
