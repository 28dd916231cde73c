#pragma once

#include <stdexcept>
#include <string>

namespace cellcast {

/// Raised when an argument violates a documented precondition.
class ParameterError : public std::invalid_argument
{
  public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an input is structurally valid but cannot be processed,
/// e.g. a nearest-BS query against an empty BS pattern.
class DegenerateInputError : public std::runtime_error
{
  public:
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cellcast
