#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lextok {

/// Base of every error raised by the library. Callers that only need a
/// message can catch this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text was not well-formed UTF-8.
class EncodingError : public Error {
 public:
  EncodingError(const std::string& what, std::size_t byte_offset)
      : Error(what + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// A line-oriented input file (catalog, corpus records, term list, config)
/// could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Tokenizer file violates the interchange format or a model invariant.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// A model was constructed with inconsistent parts.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Trainer configuration or corpus cannot produce the requested model.
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to an operation (id out of range, missing special, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace lextok
