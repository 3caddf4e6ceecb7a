#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socdim {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Input does not look like the declared format (too many malformed records).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A single line of a resource or input file could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Precondition on arguments violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class NoVectorError : public Error {
 public:
  using Error::Error;
};

class CollinearityError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace socdim
