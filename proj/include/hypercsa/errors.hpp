#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypercsa {

/// Base class of every error raised by the library. Bounds violations use
/// std::out_of_range instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a hypergraph or permutation invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A query referenced a node label that does not occur in the graph.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A query was ill-formed (empty node list, repeated node in exists, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class LoadErrorKind { kBadMagic, kUnsupportedVersion, kTruncated, kChecksumMismatch, kMalformed };

const char* to_string(LoadErrorKind kind) noexcept;

/// An index file could not be loaded.
class LoadError : public Error {
 public:
  LoadError(LoadErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  LoadErrorKind kind() const noexcept { return kind_; }

 private:
  LoadErrorKind kind_;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypercsa
