#pragma once

#include <stdexcept>
#include <string>

namespace harvest {

/// Input files or parameters that do not meet documented requirements.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed text input; message carries file and line number.
class ParseError : public ValidationError {
 public:
  explicit ParseError(const std::string& what) : ValidationError(what) {}
};

/// An API precondition was broken by the caller.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// The border set is empty: no legal query exists.
class BorderExhausted : public std::runtime_error {
 public:
  explicit BorderExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Requested probability mass cannot be reached by the distribution family.
class InfeasibleParameter : public std::runtime_error {
 public:
  explicit InfeasibleParameter(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace harvest
