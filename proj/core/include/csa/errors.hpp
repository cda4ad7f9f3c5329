// csa/errors.hpp: exception hierarchy shared by every module.
//
// Each category maps to a distinct exit code in the command-line tool.

#pragma once

#include <stdexcept>
#include <string>

namespace csa {

/// Malformed input text (JSON, CLI values, permutation syntax).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a mathematical precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A request reaches past what the configured prime/Frobenius oracle can answer exactly.
class CoverageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A documented limitation: the requested quantity needs data this library does not model.
class OutOfScopeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A configured search or size cap was exceeded.
class CapExceededError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace csa
