#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aerostate {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cholesky / innovation inversion failed even after jitter.
class NumericalDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// cos(pitch) * cos(roll) too close to zero for a slant-range model.
class SingularAttitude : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientMatches : public std::runtime_error {
 public:
  InsufficientMatches(std::size_t found, std::size_t required)
      : std::runtime_error("insufficient matches: " + std::to_string(found) +
                           " < " + std::to_string(required)),
        found_(found) {}
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t found_;
};

class DegenerateWeights : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file that cannot be parsed (log, map, trace).
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedLog : public MalformedInput {
 public:
  MalformedLog(std::size_t line, const std::string& what)
      : MalformedInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VersionMismatch : public MalformedLog {
 public:
  using MalformedLog::MalformedLog;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aerostate
