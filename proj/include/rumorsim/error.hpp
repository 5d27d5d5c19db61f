#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rumorsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range or inconsistent arguments to a generator or operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A structurally valid document whose records violate a schema rule.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The remote endpoint could not be reached within the retry budget.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

/// The remote endpoint answered with something that is not a chat completion.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Replay transcript has no recorded response for a prompt.
class ReplayMiss : public Error {
 public:
  ReplayMiss(const std::string& what, std::uint64_t iteration)
      : Error(what), iteration_(iteration) {}
  std::uint64_t iteration() const noexcept { return iteration_; }

 private:
  std::uint64_t iteration_;
};

/// Raised by the engine when the abort policy meets an unparseable response.
class ResponseParseFailure : public Error {
 public:
  using Error::Error;
};

class AggregationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rumorsim
