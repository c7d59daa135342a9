#pragma once

#include <stdexcept>
#include <string>

namespace sheetqa {

// Base class for all recoverable validation failures raised by the library.
// Evaluation failures are never exceptions; they travel inside EvalValue /
// ExecutionOutcome instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedAddress : public Error {
 public:
  explicit MalformedAddress(const std::string& msg) : Error(msg) {}
};

class MalformedEncoding : public Error {
 public:
  explicit MalformedEncoding(const std::string& msg) : Error(msg) {}
};

class NonFiniteNumber : public Error {
 public:
  explicit NonFiniteNumber(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EmptyRun : public Error {
 public:
  explicit EmptyRun(const std::string& msg) : Error(msg) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class SupportMismatch : public Error {
 public:
  explicit SupportMismatch(const std::string& msg) : Error(msg) {}
};

class GenerationFailure : public Error {
 public:
  explicit GenerationFailure(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace sheetqa
