#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slink {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Lexer failure; carries the byte offset of the offending character.
class LexError : public Error {
 public:
  LexError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Syntax error, including named unsupported constructs.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Name-resolution failure: unknown table/column or ambiguous reference.
class ResolveError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or malformed input record.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace slink
